#include <gtest/gtest.h>

#include <map>

#include "lidtest/protocol.hpp"
#include "lidtest/strategies.hpp"

using namespace lidtest;

namespace {

TestParams params(int q, int m, int d) {
  TestParams P;
  P.F = Field(params_for_order(q));
  P.m = m;
  P.d = d;
  return P;
}

std::map<Subtest, std::pair<int, Rational>> tally(const std::vector<RoundSample>& rs) {
  std::map<Subtest, std::pair<int, Rational>> t;
  for (const auto& r : rs) {
    t[r.subtest].first++;
    t[r.subtest].second += r.mass;
  }
  return t;
}

}  // namespace

// numeric_oracle.py: self-consistency support 2 with mass 1/6 each at (1,2).
TEST(Protocol, SelfConsistencySupport) {
  auto rs = enumerate_rounds(params(2, 1, 1));
  int n = 0;
  for (const auto& r : rs)
    if (r.subtest == Subtest::SelfCons) {
      ++n;
      EXPECT_EQ(r.mass, Rational(1, 6));
    }
  EXPECT_EQ(n, 2);
}

// numeric_oracle.py: axis support 16 with mass 1/48 each at (2,2).
TEST(Protocol, AxisSupport) {
  auto rs = enumerate_rounds(params(2, 2, 1));
  auto t = tally(rs);
  EXPECT_EQ(t[Subtest::Axis].first, 16);
  for (const auto& r : rs)
    if (r.subtest == Subtest::Axis) EXPECT_EQ(r.mass, Rational(1, 48));
}

TEST(Protocol, MassesSumToOne) {
  for (auto [q, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 2}, {2, 3}}) {
    Rational s = 0;
    for_each_round(params(q, m, 1), [&](const RoundSample& r) { s += r.mass; });
    EXPECT_EQ(s, 1);
    EXPECT_EQ(enumerate_rounds(params(q, m, 1)).size(), support_size(params(q, m, 1)));
  }
}

// numeric_oracle.py: j = m restricted support 2 * 4 * 4 = 32 at (2,2).
TEST(Protocol, RestrictedDiagonal) {
  TestParams P = params(2, 2, 1);
  auto rs = restricted_diag_distribution(P, 2);
  EXPECT_EQ(rs.size(), 32u);
  Rational s = 0;
  for (const auto& r : rs) s += r.mass;
  EXPECT_EQ(s, 1);
  EXPECT_THROW(restricted_diag_distribution(P, 3), DomainError);
}

TEST(Protocol, RestrictedMarginalReproducesDiagonal) {
  TestParams P = params(3, 2, 1);
  std::map<std::tuple<int, std::uint64_t, std::uint64_t>, Rational> full, mix;
  Rational diag_total = 0;
  for_each_round(P, [&](const RoundSample& r) {
    if (r.subtest != Subtest::Diag) return;
    full[{static_cast<int>(r.line_role), point_index(P.F, r.u), point_index(P.F, r.v)}] += r.mass;
    diag_total += r.mass;
  });
  for (int j = 1; j <= P.m; ++j)
    for_each_restricted_diag(P, j, [&](const RoundSample& r) {
      mix[{static_cast<int>(r.line_role), point_index(P.F, r.u), point_index(P.F, r.v)}] +=
          r.mass * diag_total / P.m;
    });
  EXPECT_EQ(full, mix);
}

TEST(Protocol, Verdicts) {
  TestParams P = params(3, 1, 1);
  for (const auto& r : enumerate_rounds(P)) {
    if (r.subtest == Subtest::SelfCons) {
      EXPECT_TRUE(verdict(P.F, r, P.F.one(), P.F.one()));
      EXPECT_FALSE(verdict(P.F, r, P.F.one(), P.F.zero()));
    } else if (r.subtest == Subtest::Axis) {
      Answer line = zero_unipoly(P.F, 1), pt0 = P.F.zero(), pt1 = P.F.one();
      bool a_line = r.line_role == Role::A;
      EXPECT_TRUE(verdict(P.F, r, a_line ? line : pt0, a_line ? pt0 : line));
      EXPECT_FALSE(verdict(P.F, r, a_line ? line : pt1, a_line ? pt1 : line));
    }
  }
}

TEST(Protocol, AxisMarginalIsSymmetric) {
  TestParams P = params(3, 2, 1);
  std::map<std::uint64_t, Rational> line_mass;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> joint;
  for_each_round(P, [&](const RoundSample& r) {
    if (r.subtest != Subtest::Axis) return;
    auto k = axis_key(P.F, *r.axis);
    line_mass[k] += r.mass;
    joint[{k, point_index(P.F, r.u)}] += r.mass;
  });
  for (auto& [kp, m] : joint) EXPECT_EQ(m / line_mass[kp.first], Rational(1, 3));
}

TEST(Protocol, ParamsValidation) {
  TestParams P = params(3, 0, 1);
  EXPECT_THROW(P.validate(), DomainError);
  P = params(3, 1, 1);
  P.weights = {Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  EXPECT_THROW(P.validate(), DomainError);
}
