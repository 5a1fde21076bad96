#pragma once

#include <vector>

#include "lidtest/measurements.hpp"

namespace lidtest {

/// 1 if x >= 1 - delta, else 0.
double trunc_scalar(double x, double delta);
/// (x - trunc_delta(x))^2 <= (x - x^2) / delta
bool scalar_trunc_inequality_check(double x, double delta);

/// R_a = trunc_delta(A_a) on the clamped spectrum of each A_a.
SubMeasurement round_to_projectors(const SubMeasurement& A, double delta);

struct RankReduction {
  SubMeasurement Q;
  // Kept eigenvectors v_{a,i}, grouped by outcome.
  std::vector<std::vector<Vec>> vectors;
};

/// Keeps the dim largest overlaps <psi| |v><v| (x) I |psi> among the
/// eigenvectors of the projectors R_a.
RankReduction rank_reduce(const SubMeasurement& R, const Mat& psi);

struct SvdProjection {
  SubMeasurement P;
  double min_singular_value = 0;
  bool defective = false;  // some singular value below 1e-10
};

/// X = sum |a,i><v_{a,i}|, X = U S V^*, Xhat = U I V^*, P_a = Xhat^* T_a Xhat.
SvdProjection svd_project(const RankReduction& rr, int dim);

struct OrthogonalizeResult {
  SubMeasurement P;
  SubMeasurement R;
  SubMeasurement Q;
  double zeta = 0;   // measured consistency (or strong self-consistency deficit)
  double delta = 0;  // truncation threshold
  double dist_R = 0;  // A ~ R
  double dist_Q = 0;  // A ~ Q
  double q_completeness = 0;
  double dist_PQ = 0;
  double dist_P = 0;  // A ~ P, the headline quantity
  double projectivity = 0;
  double bound = 0;   // 84 zeta^{1/4} or 100 zeta^{1/4}
  bool zeta_flag = false;     // zeta > 1/4: trivial output
  bool defective_svd = false;
  bool submeasurement_case = false;
};

/// Measurement case: A, B measurements with A (x) I consistent with I (x) B.
OrthogonalizeResult orthogonalize(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi);
/// Sub-measurement case via completion, on a swap-invariant state.
OrthogonalizeResult orthogonalize_sub(const SubMeasurement& A, const Mat& psi);

struct PovmPair {
  SubMeasurement A;
  SubMeasurement B;
  Mat psi;
};
/// A_a = (1 - eta) P_a + eta R_a for a random real projective P and random POVM R;
/// B is the conjugate of the same construction with a fresh R; psi maximally entangled.
PovmPair perturbed_pair(int dim, std::size_t outcomes, double eta, std::mt19937_64& rng);

}  // namespace lidtest
