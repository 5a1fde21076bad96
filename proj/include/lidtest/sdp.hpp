#pragma once

#include <vector>

#include "lidtest/measurements.hpp"
#include "lidtest/strategies.hpp"

namespace lidtest {

/// max sum_g Tr(T_g A_g) s.t. T_g >= 0, sum_g T_g = I; dual min Tr Z s.t. Z >= A_g.
struct SdpInstance {
  int r = 0;
  std::vector<Mat> A;  // one constraint per polynomial, indexed by poly_index
};

struct SdpSolution {
  std::vector<Mat> T;
  Mat Z;
  double primal = 0;
  double dual = 0;
  double gap = 0;              // |primal - dual|
  double primal_residual = 0;  // ||sum T - I||_max
  double dual_residual = 0;    // max(0, -min_g lambda_min(Z - A_g))
  double slackness = 0;        // max_g ||T_g Z - T_g A_g||_F
  int iterations = 0;
  bool converged = false;
  bool projection_preserved = true;  // completion step kept the objective within 1e-7
};

/// A_g = E_u A^u_{g(u)} from the role-A points family.
SdpInstance build_instance(const QuantumStrategy& s);
SdpInstance make_instance(const std::vector<Mat>& A);

/// Primal-dual interior point (HKM direction) from a strictly feasible start.
SdpSolution solve(const SdpInstance& inst, double tol = 1e-11, int max_iter = 300);

/// Closed form for simultaneously diagonal A_g: Z = diag(max_g (A_g)_jj).
Mat diagonal_oracle(const SdpInstance& inst);

}  // namespace lidtest
