#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lidtest/pasting.hpp"
#include "lidtest/strategies.hpp"

namespace lidtest {

enum class BoundKind { Upper, Lower };

/// margin = bound - measured for upper bounds, measured - bound for lower ones.
/// A bound is vacuous when an upper bound is >= 1 or a lower bound is <= 0.
struct BoundReport {
  std::string id;
  double measured = 0;
  double bound = 0;
  double margin = 0;
  BoundKind kind = BoundKind::Upper;
  bool vacuous = false;
  std::string note;
};

BoundReport upper_bound_report(std::string id, double measured, double bound, std::string note = {});
BoundReport lower_bound_report(std::string id, double measured, double bound, std::string note = {});

/// E_{u,v} sum_{a,b} ||([A^u_a, A^v_b] (x) I) psi||^2 against 32 gamma m.
BoundReport points_commutativity(const QuantumStrategy& s);

struct GCommutativity {
  SliceHypotheses hypotheses;
  BoundReport raw;        // G^x_g G^y_h vs G^y_h G^x_g
  BoundReport evaluated;  // G^x_{[g(u)=a]} G^y_{[h(v)=b]} vs the reverse order
};
/// Slices G^x over P(m,q,d) of a symmetric (m+1)-variable strategy; m is the slice variable count.
GCommutativity g_commutativity(const QuantumStrategy& s, const std::vector<SubMeasurement>& G);

struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MainWitness {
  std::vector<BoundReport> reports;
  SubMeasurement GA, GB;
  std::string pipeline;  // "supplied", "base-axis" or "sdp-improve"
  double failure = 0;    // overall rejection probability
};

/// Measured consistency and self-consistency of G^A, G^B against the main-theorem nu.
/// Without a candidate: m = 1 uses the single axis line's measurement; otherwise
/// symmetrize, solve the SDP, improve, orthogonalize and complete.
MainWitness main_theorem_witness(const QuantumStrategy& s, int k,
                                 const std::optional<std::pair<SubMeasurement, SubMeasurement>>& candidate = {});

}  // namespace lidtest
