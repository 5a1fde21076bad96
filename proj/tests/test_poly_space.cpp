#include <gtest/gtest.h>

#include <random>

#include "lidtest/poly_space.hpp"

using namespace lidtest;

namespace {

MultiPoly random_poly(const Field& F, int m, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, polyspace_size(F, m, d) - 1);
  return poly_from_index(F, m, d, pick(rng));
}

FieldElement naive_eval(const Field& F, const MultiPoly& g, const Point& u) {
  FieldElement s = F.zero();
  for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
    auto e = monomial_exponents(g.m, g.d, i);
    FieldElement t = g.coeffs[i];
    for (int j = 0; j < g.m; ++j) t = F.mul(t, F.pow(u[j], e[j]));
    s = F.add(s, t);
  }
  return s;
}

}  // namespace

// poly_oracle.py: |P(m,q,d)| = q^((d+1)^m).
TEST(PolySpace, Sizes) {
  EXPECT_EQ(polyspace_size(Field(2, 1), 1, 1), 4u);
  EXPECT_EQ(polyspace_size(Field(3, 1), 1, 1), 9u);
  EXPECT_EQ(polyspace_size(Field(2, 1), 2, 1), 16u);
  EXPECT_THROW(polyspace_size(Field(5, 1), 3, 2), GuardExceeded);
}

TEST(PolySpace, IndexRoundTrip) {
  Field F(2, 2);
  for_each_poly(F, 2, 1, [&](std::uint64_t i, const MultiPoly& g) { EXPECT_EQ(poly_index(g, 4), i); });
  EXPECT_EQ(poly_index(zero_poly(F, 2, 1), 4), 0u);
}

TEST(PolySpace, EvaluateMatchesNaive) {
  Field F(3, 1);
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    MultiPoly g = random_poly(F, 2, 1, rng);
    for (std::uint64_t i = 0; i < 9; ++i) {
      Point u = point_from_index(F, 2, i);
      EXPECT_EQ(evaluate(F, g, u), naive_eval(F, g, u));
    }
  }
}

// poly_oracle.py: x1 x2 on the x1-axis through (0, c) is c t.
TEST(PolySpace, AxisRestrictionOfProduct) {
  Field F(3, 1);
  MultiPoly g = make_poly(F, 2, 1, {{{1, 1}, F.one()}});
  for (auto c : F.elements()) {
    AxisLine l{0, Point{{F.zero(), c}}};
    UniPoly f = restrict_axis(F, g, l);
    EXPECT_EQ(trimmed(f), trimmed(UniPoly{{F.zero(), c}}));
  }
}

TEST(PolySpace, RestrictionsAgreePointwise) {
  Field F(5, 1);
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    MultiPoly g = zero_poly(F, 2, 2);
    for (auto& c : g.coeffs) c = F.elem(static_cast<std::uint32_t>(rng() % 5));
    Point u = point_from_index(F, 2, rng() % 25), v = point_from_index(F, 2, 1 + rng() % 24);
    DiagonalLine l = canonical_line(F, u, v);
    UniPoly f = restrict_diagonal(F, g, l);
    EXPECT_LE(degree(f), 4);
    for (auto t : F.elements()) EXPECT_EQ(evaluate(F, f, t), evaluate(F, g, line_point(F, l, t)));
    for (int axis = 0; axis < 2; ++axis) {
      AxisLine a = axis_line_through(u, axis);
      a.base[axis] = F.zero();
      UniPoly fa = restrict_axis(F, g, a);
      for (auto t : F.elements()) EXPECT_EQ(evaluate(F, fa, t), evaluate(F, g, axis_point(F, a, t)));
    }
  }
}

TEST(PolySpace, InterpolateSlicesRoundTrip) {
  Field F(2, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, (1ull << 54) - 1);
  // h in P(3,4,2) has 27 coefficients; draw them directly.
  MultiPoly h = zero_poly(F, 3, 2);
  for (auto& c : h.coeffs) c = F.elem(static_cast<std::uint32_t>(pick(rng) % 4));
  std::vector<std::pair<FieldElement, MultiPoly>> slices;
  for (std::uint32_t x = 0; x < 3; ++x) slices.push_back({F.elem(x), restrict_last(F, h, F.elem(x))});
  EXPECT_EQ(interpolate_parallel(F, slices, 2), h);
}

// poly_oracle.py: x and x^2 agree on 2/5 of F5.
TEST(PolySpace, SchwartzZippelExample) {
  Field F(5, 1);
  MultiPoly g = make_poly(F, 1, 2, {{{1}, F.one()}});
  MultiPoly h = make_poly(F, 1, 2, {{{2}, F.one()}});
  EXPECT_EQ(agreement_fraction(F, g, h), Rational(2, 5));
}

TEST(PolySpace, CanonicalLinesAndKeys) {
  Field F(3, 1);
  for (std::uint64_t k = 0; k < 9 * 9; ++k) {
    DiagonalLine l = diag_from_key(F, 2, k);
    EXPECT_EQ(diag_from_key(F, 2, diag_key(F, l)), l);
  }
  Point u = point_from_index(F, 2, 5), v = point_from_index(F, 2, 7);
  DiagonalLine l = canonical_line(F, u, v);
  EXPECT_EQ(line_point(F, l, line_parameter(F, l, u)), u);
  EXPECT_TRUE(canonical_line(F, u, zero_point(F, 2)).degenerate());
}

TEST(PolySpace, RejectsOversizedExponent) {
  Field F(3, 1);
  EXPECT_THROW(make_poly(F, 1, 1, {{{2}, F.one()}}), DomainError);
}
