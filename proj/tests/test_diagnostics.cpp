#include <gtest/gtest.h>

#include <random>

#include "lidtest/constants.hpp"
#include "lidtest/diagnostics.hpp"

using namespace lidtest;

namespace {

TestParams params(int q, int m, int d) {
  TestParams P;
  P.F = Field(params_for_order(q));
  P.m = m;
  P.d = d;
  return P;
}

std::vector<MultiPoly> seeds(const TestParams& P, int n, std::mt19937_64& rng) {
  std::vector<MultiPoly> s;
  for (int i = 0; i < n; ++i) s.push_back(poly_from_index(P.F, P.m, P.d, rng() % polyspace_size(P.F, P.m, P.d)));
  return s;
}

}  // namespace

TEST(Diagnostics, BoundReports) {
  BoundReport u = upper_bound_report("x", 0.1, 0.5);
  EXPECT_DOUBLE_EQ(u.margin, 0.4);
  EXPECT_FALSE(u.vacuous);
  EXPECT_TRUE(upper_bound_report("x", 0.1, 1.5).vacuous);
  BoundReport l = lower_bound_report("y", 0.9, 0.7);
  EXPECT_NEAR(l.margin, 0.2, 1e-15);
  EXPECT_TRUE(lower_bound_report("y", 0.9, -0.1).vacuous);
}

TEST(Diagnostics, ConstantTable) {
  EXPECT_NEAR(paper_bound("orthogonalize.measurement", {.zeta = 1.0 / 16}), 42.0, 1e-12);
  EXPECT_NEAR(paper_bound("orthogonalize.submeasurement", {.zeta = 1.0 / 16}), 50.0, 1e-12);
  EXPECT_NEAR(paper_bound("commutativity.points", {.gamma = 0.01, .m = 2}), 0.64, 1e-12);
  EXPECT_THROW(paper_bound("no.such.bound", {}), DomainError);
  for (const auto& e : constant_table()) EXPECT_FALSE(e.formula.empty()) << e.id;
}

TEST(Diagnostics, HonestCommutativityIsZero) {
  TestParams P = params(3, 2, 1);
  std::mt19937_64 rng(1);
  QuantumStrategy s = honest_quantum(P, seeds(P, 2, rng));
  BoundReport r = points_commutativity(s);
  EXPECT_NEAR(r.measured, 0.0, 1e-12);
  EXPECT_GE(r.margin, -1e-12);
}

TEST(Diagnostics, PerturbedCommutativityWithinBound) {
  TestParams P = params(3, 2, 1);
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 4; ++rep) {
    QuantumStrategy s = perturb(honest_quantum(P, seeds(P, 2, rng)), 0.05, rng);
    BoundReport r = points_commutativity(s);
    EXPECT_GE(r.margin, -1e-9);
  }
}

TEST(Diagnostics, GCommutativityHonest) {
  TestParams P = params(3, 2, 1);
  std::mt19937_64 rng(3);
  auto sd = seeds(P, 2, rng);
  QuantumStrategy s = honest_quantum(P, sd);
  GCommutativity g = g_commutativity(s, seed_slices(P.F, 1, 1, sd));
  EXPECT_NEAR(g.raw.measured, 0.0, 1e-12);
  EXPECT_NEAR(g.evaluated.measured, 0.0, 1e-12);
}

TEST(Diagnostics, MainWitnessPipelines) {
  std::mt19937_64 rng(4);
  TestParams P1 = params(3, 1, 1);
  MainWitness a = main_theorem_witness(perturb(honest_quantum(P1, seeds(P1, 2, rng)), 0.02, rng), 1);
  EXPECT_EQ(a.pipeline, "base-axis");
  EXPECT_EQ(a.reports.size(), 3u);
  TestParams P2 = params(3, 2, 1);
  MainWitness b = main_theorem_witness(perturb(honest_quantum(P2, seeds(P2, 2, rng)), 0.02, rng), 2);
  EXPECT_EQ(b.pipeline, "sdp-improve");
  for (const auto& r : b.reports) {
    EXPECT_TRUE(r.vacuous);
    EXPECT_GE(r.margin, 0.0);
  }
  EXPECT_GT(b.failure, 0.0);
}

TEST(Diagnostics, MainWitnessHonestIsExact) {
  std::mt19937_64 rng(5);
  TestParams P = params(3, 2, 1);
  QuantumStrategy s = honest_quantum(P, seeds(P, 2, rng));
  MainWitness w = main_theorem_witness(s, 2);
  for (const auto& r : w.reports) EXPECT_NEAR(r.measured, 0.0, 1e-7) << r.id;
}
