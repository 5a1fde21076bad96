#pragma once

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lidtest/poly_space.hpp"

namespace lidtest {

enum class Role { A = 0, B = 1 };
enum class Subtest { Axis = 0, SelfCons = 1, Diag = 2 };

inline Role other(Role r) { return r == Role::A ? Role::B : Role::A; }
std::string to_string(Role r);
std::string to_string(Subtest s);

struct TestParams {
  Field F;
  int m = 1;
  int d = 1;
  std::array<Rational, 3> weights{Rational(1, 3), Rational(1, 3), Rational(1, 3)};

  int q() const { return F.q(); }
  void validate() const;
};

struct PointQ {
  Point u;
};
struct AxisQ {
  AxisLine line;
};
struct DiagQ {
  DiagonalLine line;
};

struct Question {
  Role role = Role::A;
  std::variant<PointQ, AxisQ, DiagQ> body;
};

using Answer = std::variant<FieldElement, UniPoly>;

/// One point of the question distribution's support. For the line subtests
/// `line_role` receives the line and the other role receives `u`; `t` is the
/// canonical parameter of u on the line.
struct RoundSample {
  Subtest subtest = Subtest::SelfCons;
  Role line_role = Role::A;
  int index = 0;  // axis (0-based) or the diagonal index i (1..m)
  Point u;
  Point v;  // raw diagonal direction
  std::optional<AxisLine> axis;
  std::optional<DiagonalLine> diag;
  FieldElement t;
  Rational mass;

  Question question(Role r) const;
};

using RoundVisitor = std::function<void(const RoundSample&)>;

/// Support size of enumerate_rounds; throws GuardExceeded above 1e6.
std::uint64_t support_size(const TestParams& params);
void for_each_round(const TestParams& params, const RoundVisitor& fn);
std::vector<RoundSample> enumerate_rounds(const TestParams& params);

/// Diagonal subtest conditioned on index i = j (1 <= j <= m); masses sum to 1.
void for_each_restricted_diag(const TestParams& params, int j, const RoundVisitor& fn);
std::vector<RoundSample> restricted_diag_distribution(const TestParams& params, int j);

/// Draws one round from the test distribution (mass left unset).
RoundSample sample_round(const TestParams& params, std::mt19937_64& rng);

bool verdict(const Field& F, const RoundSample& s, const Answer& a_answer, const Answer& b_answer);

}  // namespace lidtest
