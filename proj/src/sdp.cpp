#include "lidtest/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lidtest {

namespace {

// vec is column-major: vec(X Y W) = (W^T kron X) vec(Y).
Vec vec(const Mat& x) { return Eigen::Map<const Vec>(x.data(), x.size()); }

Mat unvec(const Vec& v, int n) { return Eigen::Map<const Mat>(v.data(), n, n); }

double objective(const SdpInstance& inst, const std::vector<Mat>& T) {
  double s = 0;
  for (std::size_t g = 0; g < T.size(); ++g) s += (T[g] * inst.A[g]).trace().real();
  return s;
}

void fill_residuals(const SdpInstance& inst, SdpSolution& sol) {
  int n = inst.r;
  Mat sum = Mat::Zero(n, n);
  for (const auto& t : sol.T) sum += t;
  sol.primal = objective(inst, sol.T);
  sol.dual = sol.Z.trace().real();
  sol.gap = std::abs(sol.primal - sol.dual);
  sol.primal_residual = (sum - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  sol.dual_residual = 0;
  sol.slackness = 0;
  for (std::size_t g = 0; g < inst.A.size(); ++g) {
    Mat S = sol.Z - inst.A[g];
    sol.dual_residual = std::max(sol.dual_residual, -min_eigenvalue(S));
    sol.slackness = std::max(sol.slackness, (sol.T[g] * S).norm());
  }
}

}  // namespace

SdpInstance make_instance(const std::vector<Mat>& A) {
  if (A.empty()) throw DomainError("sdp: no constraints");
  SdpInstance inst{static_cast<int>(A[0].rows()), A};
  for (const auto& a : A)
    if (a.rows() != inst.r || a.cols() != inst.r) throw DomainError("sdp: constraint dimension mismatch");
  return inst;
}

SdpInstance build_instance(const QuantumStrategy& s) {
  const TestParams& P = s.params;
  const Field& F = P.F;
  const auto& pts = s.roles[0].points;
  std::uint64_t M = space_size(F, P.m);
  int n = s.dim(Role::A);
  std::vector<Mat> A;
  for_each_poly(F, P.m, P.d, [&](std::uint64_t, const MultiPoly& g) {
    auto gv = evaluation_table(F, g);
    Mat a = Mat::Zero(n, n);
    for (std::uint64_t u = 0; u < M; ++u) a += pts[u][gv[u].value];
    A.push_back(a / static_cast<double>(M));
  });
  return make_instance(A);
}

SdpSolution solve(const SdpInstance& inst, double tol, int max_iter) {
  int n = inst.r;
  std::size_t G = inst.A.size();
  if (n > 64 || G > 1024) throw GuardExceeded("sdp: instance exceeds r <= 64, outcomes <= 1024");
  Mat I = Mat::Identity(n, n);
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& a : inst.A) lmax = std::max(lmax, max_eigenvalue(a));

  SdpSolution sol;
  sol.T.assign(G, I / static_cast<double>(G));
  sol.Z = (std::max(lmax, 0.0) + 1.0) * I;
  const double sigma = 0.1;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<Mat> S(G), Sinv(G);
    double gap = 0;
    for (std::size_t g = 0; g < G; ++g) {
      S[g] = hermitian_part(sol.Z - inst.A[g]);
      Sinv[g] = hermitian_part(S[g].inverse());
      gap += (sol.T[g] * S[g]).trace().real();
    }
    sol.iterations = it;
    if (gap <= tol * (1.0 + std::abs(objective(inst, sol.T)))) {
      sol.converged = true;
      break;
    }
    double mu = gap / (static_cast<double>(G) * n);
    Mat op = Mat::Zero(n * n, n * n);
    Mat rhs = -I;
    for (std::size_t g = 0; g < G; ++g) {
      op += 0.5 * (kron(Sinv[g].transpose(), sol.T[g]) + kron(sol.T[g].transpose(), Sinv[g]));
      rhs += sigma * mu * Sinv[g];
    }
    Mat dZ = hermitian_part(unvec(op.partialPivLu().solve(vec(rhs)), n));
    std::vector<Mat> dT(G);
    double ap = std::numeric_limits<double>::infinity(), ad = ap;
    for (std::size_t g = 0; g < G; ++g) {
      dT[g] = sigma * mu * Sinv[g] - sol.T[g] - hermitian_part(sol.T[g] * dZ * Sinv[g]);
      ap = std::min(ap, max_step_psd(sol.T[g], dT[g]));
      ad = std::min(ad, max_step_psd(S[g], dZ));
    }
    ap = std::min(1.0, 0.95 * ap);
    ad = std::min(1.0, 0.95 * ad);
    if (!(ap > 1e-14) && !(ad > 1e-14)) break;
    for (std::size_t g = 0; g < G; ++g) sol.T[g] = hermitian_part(sol.T[g] + ap * dT[g]);
    sol.Z = hermitian_part(sol.Z + ad * dZ);
  }

  double before = objective(inst, sol.T);
  Mat sum = Mat::Zero(n, n);
  for (const auto& t : sol.T) sum += t;
  Mat w = spectral_apply(sum, [](double l) { return 1.0 / std::sqrt(std::max(l, 1e-300)); });
  for (auto& t : sol.T) t = hermitian_part(w * t * w);
  fill_residuals(inst, sol);
  sol.projection_preserved = std::abs(sol.primal - before) <= 1e-7;
  return sol;
}

Mat diagonal_oracle(const SdpInstance& inst) {
  Mat Z = Mat::Zero(inst.r, inst.r);
  for (int j = 0; j < inst.r; ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : inst.A) best = std::max(best, a(j, j).real());
    Z(j, j) = best;
  }
  return Z;
}

}  // namespace lidtest
