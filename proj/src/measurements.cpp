#include "lidtest/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lidtest/finite_field.hpp"

namespace lidtest {

namespace {

void check_same_support(std::size_t a, std::size_t b, std::size_t d) {
  if (a != b || a != d) throw DomainError("families and distribution have different supports");
}

}  // namespace

Mat SubMeasurement::total() const {
  Mat s = Mat::Zero(dim(), dim());
  for (const auto& op : ops) s += op;
  return s;
}

Dist uniform_dist(std::size_t n) { return Dist(n, n ? 1.0 / static_cast<double>(n) : 0.0); }

MeasurementCheck check_submeasurement(const SubMeasurement& A, double tol) {
  MeasurementCheck c;
  int n = A.dim();
  for (const auto& op : A.ops) {
    if (op.rows() != n || op.cols() != n) {
      c.ok = false;
      c.message = "operator dimensions differ";
      return c;
    }
    c.hermitian_residual = std::max(c.hermitian_residual, n ? (op - op.adjoint()).cwiseAbs().maxCoeff() : 0.0);
    c.min_eigenvalue = std::min(c.min_eigenvalue, min_eigenvalue(op));
  }
  c.max_total_eigenvalue = max_eigenvalue(A.total());
  if (c.hermitian_residual > 1e-10) {
    c.ok = false;
    c.message = "operator not Hermitian";
  } else if (c.min_eigenvalue < -1e-10) {
    c.ok = false;
    c.message = "operator not PSD";
  } else if (c.max_total_eigenvalue > 1 + tol) {
    c.ok = false;
    c.message = "operators sum above identity";
  }
  return c;
}

MeasurementCheck check_measurement(const SubMeasurement& A, double tol) {
  MeasurementCheck c = check_submeasurement(A, tol);
  if (A.dim() == 0) return c;
  c.completeness_residual = (A.total() - Mat::Identity(A.dim(), A.dim())).cwiseAbs().maxCoeff();
  if (c.ok && c.completeness_residual > tol) {
    c.ok = false;
    c.message = "operators do not sum to identity";
  }
  return c;
}

double projectivity_residual(const SubMeasurement& A) {
  double r = 0;
  for (std::size_t a = 0; a < A.size(); ++a) {
    r = std::max(r, (A[a] * A[a] - A[a]).norm());
    for (std::size_t b = a + 1; b < A.size(); ++b) r = std::max(r, (A[a] * A[b]).norm());
  }
  return r;
}

bool is_projective(const SubMeasurement& A, double tol) { return projectivity_residual(A) <= tol; }

SubMeasurement post_process(const SubMeasurement& A, const std::vector<std::size_t>& f, std::size_t n_out) {
  if (f.size() != A.size()) throw DomainError("post_process: map length differs from outcome count");
  SubMeasurement B;
  B.ops.assign(n_out, Mat::Zero(A.dim(), A.dim()));
  for (std::size_t a = 0; a < A.size(); ++a) {
    if (f[a] >= n_out) throw DomainError("post_process: image label out of range");
    B[f[a]] += A[a];
  }
  return B;
}

SubMeasurement complete(const SubMeasurement& A) {
  SubMeasurement B = A;
  B.ops.push_back(Mat::Identity(A.dim(), A.dim()) - A.total());
  return B;
}

SubMeasurement trivial_measurement(int dim, std::size_t outcomes) {
  SubMeasurement A;
  A.ops.assign(outcomes, Mat::Zero(dim, dim));
  if (outcomes) A.ops[0] = Mat::Identity(dim, dim);
  return A;
}

SubMeasurement random_povm(int dim, std::size_t outcomes, std::mt19937_64& rng) {
  if (dim < 1 || outcomes < 1) throw DomainError("random_povm: need dim >= 1 and outcomes >= 1");
  std::uniform_int_distribution<int> rk(1, dim);
  SubMeasurement A;
  Mat S;
  do {
    A.ops.clear();
    S = Mat::Zero(dim, dim);
    for (std::size_t a = 0; a < outcomes; ++a) {
      A.ops.push_back(random_psd(dim, rk(rng), rng));
      S += A.ops.back();
    }
  } while (min_eigenvalue(S) < 1e-8 * max_eigenvalue(S));
  Mat W = spectral_apply(S, [](double l) { return 1.0 / std::sqrt(l); });
  for (auto& op : A.ops) op = hermitian_part(W * op * W);
  return A;
}

SubMeasurement random_projective(int dim, std::size_t outcomes, std::mt19937_64& rng, bool real) {
  Mat U = real ? random_orthogonal(dim, rng) : random_unitary(dim, rng);
  // Random cut points give a random (possibly empty) block per outcome.
  std::uniform_int_distribution<std::size_t> pick(0, outcomes - 1);
  std::vector<std::size_t> owner(dim);
  for (int i = 0; i < dim; ++i) owner[i] = pick(rng);
  SubMeasurement A;
  A.ops.assign(outcomes, Mat::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) A[owner[i]] += U.col(i) * U.col(i).adjoint();
  return A;
}

double consistency(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi) {
  if (A.size() != B.size()) throw DomainError("consistency: outcome sets differ");
  double total = expect(psi, A.total(), B.total()).real();
  double agree = 0;
  for (std::size_t a = 0; a < A.size(); ++a) agree += expect(psi, A[a], B[a]).real();
  return total - agree;
}

double consistency(const Family& A, const Family& B, const Mat& psi, const Dist& dist) {
  check_same_support(A.size(), B.size(), dist.size());
  double s = 0;
  for (std::size_t x = 0; x < A.size(); ++x)
    if (dist[x] != 0) s += dist[x] * consistency(A[x], B[x], psi);
  return s;
}

double agreement(const Family& A, const Family& B, const Mat& psi, const Dist& dist) {
  check_same_support(A.size(), B.size(), dist.size());
  double s = 0;
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (dist[x] == 0) continue;
    for (std::size_t a = 0; a < A[x].size(); ++a) s += dist[x] * expect(psi, A[x][a], B[x][a]).real();
  }
  return s;
}

double state_distance(const SubMeasurement& A, const SubMeasurement& B, const Vec& psi) {
  if (A.size() != B.size()) throw DomainError("state_distance: outcome sets differ");
  double s = 0;
  for (std::size_t a = 0; a < A.size(); ++a) {
    if (A[a].rows() != psi.size() || B[a].rows() != psi.size()) throw DomainError("state_distance: dimension mismatch");
    s += ((A[a] - B[a]) * psi).squaredNorm();
  }
  return s;
}

double state_distance(const Family& A, const Family& B, const Vec& psi, const Dist& dist) {
  check_same_support(A.size(), B.size(), dist.size());
  double s = 0;
  for (std::size_t x = 0; x < A.size(); ++x)
    if (dist[x] != 0) s += dist[x] * state_distance(A[x], B[x], psi);
  return s;
}

double state_distance(const LocalFamily& A, const LocalFamily& B, const Mat& psi, const Dist& dist) {
  check_same_support(A.size(), B.size(), dist.size());
  double s = 0;
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (A[x].size() != B[x].size()) throw DomainError("state_distance: outcome sets differ");
    if (dist[x] == 0) continue;
    for (std::size_t a = 0; a < A[x].size(); ++a) s += dist[x] * (apply(A[x][a], psi) - apply(B[x][a], psi)).squaredNorm();
  }
  return s;
}

double left_distance(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi) {
  if (A.size() != B.size()) throw DomainError("left_distance: outcome sets differ");
  double s = 0;
  for (std::size_t a = 0; a < A.size(); ++a) s += ((A[a] - B[a]) * psi).squaredNorm();
  return s;
}

double completeness(const SubMeasurement& A, const Mat& psi) { return expect(psi, A.total(), Mat()).real(); }

double strong_self_consistency(const Family& A, const Mat& psi, const Dist& dist) {
  if (!swap_invariant(psi)) throw DomainError("strong_self_consistency: state is not permutation invariant");
  if (A.size() != dist.size()) throw DomainError("strong_self_consistency: support mismatch");
  double s = 0;
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (dist[x] == 0) continue;
    double self = 0;
    for (const auto& op : A[x].ops) self += expect(psi, op, op).real();
    s += dist[x] * (completeness(A[x], psi) - self);
  }
  return s;
}

double strong_self_consistency(const SubMeasurement& A, const Mat& psi) {
  return strong_self_consistency(Family{A}, psi, Dist{1.0});
}

LocalFamily left_family(const Family& A) {
  LocalFamily out(A.size());
  for (std::size_t x = 0; x < A.size(); ++x)
    for (const auto& op : A[x].ops) out[x].push_back(Local{op, Mat()});
  return out;
}

LocalFamily right_family(const Family& A) {
  LocalFamily out(A.size());
  for (std::size_t x = 0; x < A.size(); ++x)
    for (const auto& op : A[x].ops) out[x].push_back(Local{Mat(), op});
  return out;
}

}  // namespace lidtest
