#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lidtest/linalg.hpp"

namespace lidtest {

/// Outcome-indexed PSD operators; the label of an outcome is its position.
struct SubMeasurement {
  std::vector<Mat> ops;

  std::size_t size() const { return ops.size(); }
  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops[0].rows()); }
  const Mat& operator[](std::size_t a) const { return ops[a]; }
  Mat& operator[](std::size_t a) { return ops[a]; }
  /// Sum of all operators (the complete part).
  Mat total() const;
};

/// Question-indexed families; a distribution is a weight per question.
using Family = std::vector<SubMeasurement>;
using Dist = std::vector<double>;

Dist uniform_dist(std::size_t n);

struct MeasurementCheck {
  bool ok = true;
  double hermitian_residual = 0;
  double min_eigenvalue = 0;
  double completeness_residual = 0;  // ||sum - I||_max, measurements only
  double max_total_eigenvalue = 0;
  std::string message;
};

MeasurementCheck check_submeasurement(const SubMeasurement& A, double tol = 1e-9);
MeasurementCheck check_measurement(const SubMeasurement& A, double tol = 1e-9);
/// max_a ||A_a^2 - A_a|| and max_{a != b} ||A_a A_b||.
double projectivity_residual(const SubMeasurement& A);
bool is_projective(const SubMeasurement& A, double tol = 1e-9);

/// B_b = sum_{a : f(a) = b} A_a, with n_out outcomes.
SubMeasurement post_process(const SubMeasurement& A, const std::vector<std::size_t>& f, std::size_t n_out);
/// Appends the outcome I - sum_a A_a as the last label.
SubMeasurement complete(const SubMeasurement& A);
SubMeasurement trivial_measurement(int dim, std::size_t outcomes);

SubMeasurement random_povm(int dim, std::size_t outcomes, std::mt19937_64& rng);
/// Projective measurement assigning each vector of a random basis to a random outcome.
SubMeasurement random_projective(int dim, std::size_t outcomes, std::mt19937_64& rng, bool real = false);

/// E_x sum_{a != b} <psi| A^x_a (x) B^x_b |psi>, with A on the left factor.
double consistency(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi);
double consistency(const Family& A, const Family& B, const Mat& psi, const Dist& dist);
/// E_x sum_a <psi| A^x_a (x) B^x_a |psi>.
double agreement(const Family& A, const Family& B, const Mat& psi, const Dist& dist);

/// E_x sum_a ||(A^x_a - B^x_a) psi||^2 on a single (unpartitioned) space.
double state_distance(const SubMeasurement& A, const SubMeasurement& B, const Vec& psi);
double state_distance(const Family& A, const Family& B, const Vec& psi, const Dist& dist);
/// Bipartite version on families of product operators.
using LocalFamily = std::vector<std::vector<Local>>;
double state_distance(const LocalFamily& A, const LocalFamily& B, const Mat& psi, const Dist& dist);
/// sum_a ||((A_a - B_a) (x) I) psi||^2
double left_distance(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi);

/// <psi| A (x) I |psi> with A the complete part.
double completeness(const SubMeasurement& A, const Mat& psi);
/// E_x <A^x (x) I> - E_x sum_a <A^x_a (x) A^x_a>; requires a swap-invariant state.
double strong_self_consistency(const Family& A, const Mat& psi, const Dist& dist);
double strong_self_consistency(const SubMeasurement& A, const Mat& psi);

/// Lifts single-space operators to the left or right factor.
LocalFamily left_family(const Family& A);
LocalFamily right_family(const Family& A);

}  // namespace lidtest
