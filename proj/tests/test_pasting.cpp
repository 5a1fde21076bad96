#include <gtest/gtest.h>

#include <random>

#include "lidtest/linalg.hpp"
#include "lidtest/pasting.hpp"

using namespace lidtest;

namespace {

std::vector<MultiPoly> seeds(const Field& F, int m, int d, int n, std::mt19937_64& rng) {
  std::vector<MultiPoly> s;
  for (int i = 0; i < n; ++i) s.push_back(poly_from_index(F, m, d, rng() % polyspace_size(F, m, d)));
  return s;
}

std::vector<std::vector<FieldElement>> all_tuples(const Field& F, int k) {
  std::vector<std::vector<FieldElement>> out{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<FieldElement>> next;
    for (const auto& t : out)
      for (auto x : F.elements()) {
        auto u = t;
        u.push_back(x);
        next.push_back(u);
      }
    out = next;
  }
  return out;
}

}  // namespace

// numeric_oracle.py: TV = 1/4 at (q,k) = (4,2) and 13/25 at (5,3).
TEST(Pasting, TvDistance) {
  TvCheck a = tv_distance_bound_check(4, 2);
  EXPECT_EQ(a.exact, Rational(1, 4));
  EXPECT_EQ(a.collision_bound, Rational(1, 4));
  EXPECT_EQ(a.square_bound, 1);
  TvCheck b = tv_distance_bound_check(5, 3);
  EXPECT_EQ(b.exact, Rational(13, 25));
  EXPECT_EQ(b.collision_bound, Rational(3, 5));
  EXPECT_EQ(distinct_tuples(Field(5, 1), 3).size(), 60u);
  EXPECT_THROW(distinct_tuples(Field(3, 1), 4), DomainError);
}

TEST(Pasting, SandwichTelescopes) {
  Field F(5, 1);
  std::mt19937_64 rng(1);
  auto sd = seeds(F, 1, 1, 3, rng);
  auto Ghat = complete_slices(seed_slices(F, 1, 1, sd));
  for (const auto& xs : all_tuples(F, 3)) {
    Mat tot = sandwich_total(Ghat, xs);
    EXPECT_LT((tot - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Pasting, DiagonalSandwichIsProductOfIndicators) {
  Field F(3, 1);
  std::mt19937_64 rng(2);
  auto sd = seeds(F, 1, 1, 3, rng);
  auto Ghat = complete_slices(seed_slices(F, 1, 1, sd));
  std::vector<FieldElement> xs{F.elem(0), F.elem(2)};
  for (std::size_t g0 = 0; g0 < Ghat[0].size(); ++g0)
    for (std::size_t g1 = 0; g1 < Ghat[2].size(); ++g1) {
      Mat want = Ghat[0][g0] * Ghat[2][g1];
      EXPECT_LT((sandwich(Ghat, xs, {g0, g1}) - want).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Pasting, HonestSlicesPasteToInterpolant) {
  Field F(5, 1);
  std::mt19937_64 rng(3);
  auto sd = seeds(F, 2, 1, 2, rng);
  auto G = seed_slices(F, 1, 1, sd);
  PastedMeasurement pm = pasted_measurement(F, 1, 1, G, {3, true, 4096, 0});
  EXPECT_TRUE(pm.exact);
  EXPECT_EQ(pm.tuples, 60u);
  for (std::size_t h = 0; h < pm.H.size(); ++h) {
    Mat want = Mat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      if (poly_index(sd[i], 5) == h) want(i, i) = 1.0;
    EXPECT_LT((pm.H[h] - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Pasting, InterpolateTuple) {
  Field F(3, 1);
  MultiPoly h = make_poly(F, 2, 1, {{{1, 1}, F.one()}, {{0, 0}, F.elem(2)}});
  std::vector<FieldElement> xs{F.elem(0), F.elem(1), F.elem(2)};
  std::vector<std::optional<MultiPoly>> gs;
  for (auto x : xs) gs.push_back(restrict_last(F, h, x));
  EXPECT_EQ(interpolate_tuple(F, 1, xs, gs), h);
  gs[2] = std::nullopt;
  EXPECT_EQ(interpolate_tuple(F, 1, xs, gs), h);
  gs[1] = std::nullopt;
  EXPECT_FALSE(interpolate_tuple(F, 1, xs, gs).has_value());
  gs = {restrict_last(F, h, xs[0]), restrict_last(F, h, xs[1]), zero_poly(F, 1, 1)};
  EXPECT_FALSE(interpolate_tuple(F, 1, xs, gs).has_value());
}

// numeric_oracle.py: 1 - P[Bin(20,0.9) >= 2] = 1.81e-18; P[Bin(10,0.5) >= 3] = 0.9453125.
TEST(Pasting, BinomialTail) {
  EXPECT_NEAR(1.0 - binomial_tail(0.9, 20, 1), 1.81e-18, 1e-15);
  EXPECT_NEAR(binomial_tail(0.5, 10, 2), 0.9453125, 1e-14);
  Mat X = Mat::Identity(2, 2) * 0.5;
  EXPECT_NEAR(binomial_matrix_F(X, 10, 2)(0, 0).real(), 0.9453125, 1e-12);
}

TEST(Pasting, ChernoffCompleteness) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    Mat x = random_psd(3, 3, rng);
    x = Mat::Identity(3, 3) - 0.05 * x / max_eigenvalue(x);
    Mat psi = from_vector(random_unit_vector(9, rng), 3, 3);
    ChernoffReport r = chernoff_completeness_check(x, psi, 16, 2, 0.5);
    EXPECT_GE(r.margin, -1e-12);
    EXPECT_LT(r.commutator, 1e-10);
  }
  EXPECT_THROW(chernoff_completeness_check(Mat::Identity(2, 2), maximally_entangled(2), 3, 2, 0.5), DomainError);
}

TEST(Pasting, ScalarInequalityGrid) {
  int violations = 0;
  for (int d = 1; d <= 10; ++d)
    for (int i = 0; i <= 1000; ++i) violations += !scalar_ineq_check(i / 1000.0, d);
  EXPECT_EQ(violations, 0);
}

TEST(Pasting, HonestReportHasZeroHypotheses) {
  Field F(3, 1);
  std::mt19937_64 rng(5);
  TestParams P;
  P.F = F;
  P.m = 2;
  P.d = 1;
  auto sd = seeds(F, 2, 1, 2, rng);
  QuantumStrategy s = honest_quantum(P, sd);
  PastingReport r = pasting_report(s, seed_slices(F, 1, 1, sd), {2, true, 4096, 0});
  EXPECT_NEAR(r.zeta, 0.0, 1e-8);
  EXPECT_NEAR(r.consistency, 0.0, 1e-8);
  EXPECT_NEAR(r.h_completeness, 1.0, 1e-8);
  EXPECT_LE(r.consistency, r.sigma);
  EXPECT_FALSE(r.regime);
}
