#include "lidtest/orthogonalize.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "lidtest/constants.hpp"
#include "lidtest/finite_field.hpp"

namespace lidtest {

double trunc_scalar(double x, double delta) { return x >= 1.0 - delta ? 1.0 : 0.0; }

bool scalar_trunc_inequality_check(double x, double delta) {
  double lhs = std::pow(x - trunc_scalar(x, delta), 2);
  double rhs = (x - x * x) / delta;
  return lhs <= rhs + 1e-12;
}

SubMeasurement round_to_projectors(const SubMeasurement& A, double delta) {
  SubMeasurement R;
  for (const auto& op : A.ops)
    R.ops.push_back(spectral_apply(op, [delta](double l) { return trunc_scalar(std::clamp(l, 0.0, 1.0 + 1e-9), delta); }));
  return R;
}

RankReduction rank_reduce(const SubMeasurement& R, const Mat& psi) {
  int n = R.dim();
  Mat rho = psi * psi.adjoint();
  // (overlap, outcome, vector)
  std::vector<std::tuple<double, std::size_t, Vec>> cand;
  for (std::size_t a = 0; a < R.size(); ++a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(R[a]));
    for (int i = 0; i < n; ++i) {
      if (es.eigenvalues()(i) < 0.5) continue;
      Vec v = es.eigenvectors().col(i);
      cand.emplace_back((v.adjoint() * rho * v)(0, 0).real(), a, v);
    }
  }
  std::stable_sort(cand.begin(), cand.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
  if (cand.size() > static_cast<std::size_t>(n)) cand.resize(n);
  RankReduction rr;
  rr.Q.ops.assign(R.size(), Mat::Zero(n, n));
  rr.vectors.assign(R.size(), {});
  for (const auto& [o, a, v] : cand) {
    rr.Q[a] += v * v.adjoint();
    rr.vectors[a].push_back(v);
  }
  return rr;
}

SvdProjection svd_project(const RankReduction& rr, int dim) {
  std::vector<std::size_t> owner;
  std::vector<Vec> rows;
  for (std::size_t a = 0; a < rr.vectors.size(); ++a)
    for (const auto& v : rr.vectors[a]) {
      owner.push_back(a);
      rows.push_back(v);
    }
  SvdProjection out;
  out.P.ops.assign(rr.vectors.size(), Mat::Zero(dim, dim));
  if (rows.empty()) return out;
  Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  Mat X(m, dim);
  for (Eigen::Index r = 0; r < m; ++r) X.row(r) = rows[r].adjoint();
  Eigen::JacobiSVD<Mat> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.min_singular_value = svd.singularValues().minCoeff();
  out.defective = out.min_singular_value < 1e-10;
  Mat Xhat = svd.matrixU() * svd.matrixV().adjoint();
  for (Eigen::Index r = 0; r < m; ++r) out.P[owner[r]] += Xhat.row(r).adjoint() * Xhat.row(r);
  for (auto& op : out.P.ops) op = hermitian_part(op);
  return out;
}

OrthogonalizeResult orthogonalize(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi) {
  if (A.size() != B.size()) throw DomainError("orthogonalize: outcome sets differ");
  if (psi.rows() != A.dim() || psi.cols() != B.dim()) throw DomainError("orthogonalize: state dimension mismatch");
  OrthogonalizeResult r;
  int n = A.dim();
  r.zeta = std::max(0.0, consistency(A, B, psi));
  r.bound = paper_bound("orthogonalize.measurement", BoundInputs{.zeta = r.zeta});
  if (r.zeta > 0.25) {
    r.zeta_flag = true;
    r.P.ops.assign(A.size(), Mat::Zero(n, n));
    r.R = r.Q = r.P;
    r.dist_P = left_distance(A, r.P, psi);
    return r;
  }
  r.delta = std::clamp(std::sqrt(r.zeta), 1e-8, 0.5);
  r.R = round_to_projectors(A, r.delta);
  RankReduction rr = rank_reduce(r.R, psi);
  r.Q = rr.Q;
  SvdProjection sp = svd_project(rr, n);
  r.P = sp.P;
  r.defective_svd = sp.defective;
  r.dist_R = left_distance(A, r.R, psi);
  r.dist_Q = left_distance(A, r.Q, psi);
  r.q_completeness = completeness(r.Q, psi);
  r.dist_PQ = left_distance(r.P, r.Q, psi);
  r.dist_P = left_distance(A, r.P, psi);
  r.projectivity = projectivity_residual(r.P);
  return r;
}

OrthogonalizeResult orthogonalize_sub(const SubMeasurement& A, const Mat& psi) {
  double zeta = std::max(0.0, strong_self_consistency(A, psi));
  SubMeasurement Ahat = complete(A);
  OrthogonalizeResult r = orthogonalize(Ahat, Ahat, psi);
  r.submeasurement_case = true;
  r.P.ops.pop_back();
  r.R.ops.pop_back();
  r.Q.ops.pop_back();
  r.zeta = zeta;
  r.bound = paper_bound("orthogonalize.submeasurement", BoundInputs{.zeta = zeta});
  r.dist_R = left_distance(A, r.R, psi);
  r.dist_Q = left_distance(A, r.Q, psi);
  r.dist_PQ = left_distance(r.P, r.Q, psi);
  r.dist_P = left_distance(A, r.P, psi);
  r.projectivity = projectivity_residual(r.P);
  return r;
}

PovmPair perturbed_pair(int dim, std::size_t outcomes, double eta, std::mt19937_64& rng) {
  SubMeasurement P = random_projective(dim, outcomes, rng, true);
  SubMeasurement RA = random_povm(dim, outcomes, rng);
  SubMeasurement RB = random_povm(dim, outcomes, rng);
  PovmPair out;
  for (std::size_t a = 0; a < outcomes; ++a) {
    out.A.ops.push_back((1.0 - eta) * P[a] + eta * RA[a]);
    out.B.ops.push_back(((1.0 - eta) * P[a] + eta * RB[a]).conjugate());
  }
  out.psi = maximally_entangled(dim);
  return out;
}

}  // namespace lidtest
