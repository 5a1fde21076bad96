#pragma once

#include <vector>

#include "lidtest/orthogonalize.hpp"
#include "lidtest/sdp.hpp"
#include "lidtest/strategies.hpp"

namespace lidtest {

/// Diagonal measurement over P(m,q,d): seed s reports seeds[s] (psi = I/sqrt(D) convention).
SubMeasurement seed_measurement(const TestParams& params, const std::vector<MultiPoly>& seeds);

/// E_u sum_{a != b} <psi| A^u_a (x) H_{[h(u)=b]} |psi> with A the role-A points family.
double points_consistency(const QuantumStrategy& s, const SubMeasurement& H);

struct ImproveReport {
  Goodness goodness;
  double nu = 0;         // measured consistency of A with G
  double zeta = 0;       // 3000m (eps^{1/32} + delta^{1/32} + (d/q)^{1/32})
  double zeta_hat = 0;   // 100m (eps^{1/2} + delta^{1/2} + (d/q)^{1/2})
  double completeness = 0;
  double a_consistency = 0;
  double ssc_deficit = 0;             // or the state distance for projective output
  double boundedness = 0;             // <Z (x) (I - H)>
  double boundedness_helper = 0;      // <Z (x) I> - E_u sum_a <A^u_a (x) H_{[h(u)=a]}>
  double z_dominance = 0;             // min_h lambda_min(Z - A_h)
  double submeasurement_excess = 0;   // lambda_max(sum_h H_h) - 1
  bool projective = false;
  double projectivity = 0;
};

struct ImproveResult {
  SubMeasurement H;
  Mat Z;
  SdpSolution sdp;
  ImproveReport report;
};

/// H_h = E_u A^u_{h(u)} T_h A^u_{h(u)} from the SDP optimum; G indexed by poly_index.
ImproveResult improve(const QuantumStrategy& s, const SubMeasurement& G);
/// improve followed by orthogonalization of H via completion.
ImproveResult projective_improve(const QuantumStrategy& s, const SubMeasurement& G);

}  // namespace lidtest
