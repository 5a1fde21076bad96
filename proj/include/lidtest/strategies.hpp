#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "lidtest/measurements.hpp"
#include "lidtest/protocol.hpp"

namespace lidtest {

struct StrategyInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic answers of one role, keyed by canonical questions.
/// Degenerate diagonal lines hold a constant polynomial.
struct ClassicalTable {
  std::vector<FieldElement> points;        // by point_index
  std::vector<UniPoly> axis;               // by axis_key
  std::map<std::uint64_t, UniPoly> diag;   // by diag_key
};

struct ClassicalStrategy {
  TestParams params;
  std::array<ClassicalTable, 2> roles;

  Answer answer(const Question& q) const;
};

/// Shared randomness: a distribution over deterministic strategies.
struct RandomizedStrategy {
  TestParams params;
  std::vector<std::pair<Rational, ClassicalStrategy>> mixture;
};

/// Measurement families of one role. Points have q outcomes (field values),
/// axis lines q^{d+1} (unipoly_index, bound d), diagonal lines q^{md+1}
/// (bound md) except degenerate lines, which have q outcomes.
struct RoleFamilies {
  Family points;
  Family axis;
  std::map<std::uint64_t, SubMeasurement> diag;
};

struct QuantumStrategy {
  TestParams params;
  Mat psi;  // dA x dB
  std::array<RoleFamilies, 2> roles;
  bool symmetric = false;

  int dim(Role r) const { return static_cast<int>(r == Role::A ? psi.rows() : psi.cols()); }
};

template <class T>
struct GoodnessT {
  T eps{};    // axis-parallel lines test failure
  T delta{};  // self-consistency failure
  T gamma{};  // diagonal lines failure
};
using ExactGoodness = GoodnessT<Rational>;
using Goodness = GoodnessT<double>;

Goodness to_double(const ExactGoodness& g);

/// Canonical keys of every diagonal line in the question support, sorted.
std::vector<std::uint64_t> diagonal_line_keys(const TestParams& params);

ClassicalStrategy honest_strategy(const TestParams& params, const MultiPoly& g);
/// Points x_1^{d+1}; axis lines along the first coordinate answer 0.
ClassicalStrategy example_1_5(const TestParams& params);
/// Each answer drawn uniformly from its format.
ClassicalStrategy random_classical(const TestParams& params, std::mt19937_64& rng);

ExactGoodness failure_probabilities(const ClassicalStrategy& s);
ExactGoodness failure_probabilities(const RandomizedStrategy& s);
Goodness failure_probabilities(const QuantumStrategy& s);

/// Axis-test mass whose line answer differs, as a function on the line,
/// from the points function restricted to it (each such round counted lost).
Rational paper_axis_loss(const ClassicalStrategy& s);
/// max over g in P(m,q,d) of the agreement of the role-A points function with g.
Rational max_points_agreement(const ClassicalStrategy& s);

/// Diagonal commuting embedding: psi = diag(sqrt(w_s)), projectors onto seeds.
QuantumStrategy embed_classical(const RandomizedStrategy& s);
QuantumStrategy embed_classical(const ClassicalStrategy& s);

/// Shared-seed honest strategy: seed s answers with g_s; psi = I / sqrt(D).
QuantumStrategy honest_quantum(const TestParams& params, const std::vector<MultiPoly>& seeds);
/// Conjugates every question's family by exp(eta K) for a random real
/// antisymmetric K, shared by both roles (keeps a symmetric strategy symmetric).
QuantumStrategy perturb(const QuantumStrategy& s, double eta, std::mt19937_64& rng);

/// Throws StrategyInvalid with the failing question on violation.
void validate(const QuantumStrategy& s, double tol = 1e-9);
void validate(const ClassicalStrategy& s);

QuantumStrategy symmetrize(const QuantumStrategy& s);
/// (<r| (x) I) G (|r> (x) I) for the role block r.
SubMeasurement unsymmetrize_measurement(const SubMeasurement& G, Role role);

struct McEstimate {
  Goodness failure;
  Goodness stderr_;
  std::array<std::uint64_t, 3> rounds{};
};

/// Sampled verdicts; quantum rounds draw accept with the exact round probability.
McEstimate monte_carlo(const ClassicalStrategy& s, std::uint64_t rounds, std::uint64_t seed);
McEstimate monte_carlo(const QuantumStrategy& s, std::uint64_t rounds, std::uint64_t seed);

/// Probability that the verifier accepts the given round.
double accept_probability(const QuantumStrategy& s, const RoundSample& r);

/// Polynomial evaluation table val[f][t] for unipoly labels of the given bound.
std::vector<std::vector<std::uint32_t>> unipoly_value_table(const Field& F, int bound);

}  // namespace lidtest
