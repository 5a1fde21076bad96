#include "lidtest/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "lidtest/constants.hpp"

namespace lidtest {

namespace {

int weight_of(const Point& a) {
  int w = 0;
  for (const auto& c : a.coords) w += c.value != 0;
  return w;
}

}  // namespace

HypercubeGraph hypercube(const Field& F, int m) {
  if (m < 1) throw DomainError("hypercube: m must be >= 1");
  if (std::pow(static_cast<double>(F.q()), m) > 4096) throw GuardExceeded("hypercube: q^m exceeds 4096");
  return HypercubeGraph{F, m, space_size(F, m)};
}

Eigen::MatrixXd adjacency(const HypercubeGraph& G) {
  const Field& F = G.F;
  Eigen::Index M = static_cast<Eigen::Index>(G.M);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(M, M);
  double w = 1.0 / (static_cast<double>(G.M) * G.m * F.q());
  for (std::uint64_t ui = 0; ui < G.M; ++ui) {
    Point u = point_from_index(F, G.m, ui);
    for (int i = 0; i < G.m; ++i)
      for (const auto& x : F.elements()) {
        Point v = u;
        v[i] = F.add(u[i], x);
        K(static_cast<Eigen::Index>(ui), static_cast<Eigen::Index>(point_index(F, v))) += w;
      }
  }
  return K;
}

Eigen::MatrixXd laplacian(const HypercubeGraph& G) {
  Eigen::Index M = static_cast<Eigen::Index>(G.M);
  return Eigen::MatrixXd::Identity(M, M) / static_cast<double>(G.M) - adjacency(G);
}

Vec character_vector(const HypercubeGraph& G, const Point& alpha) {
  const Field& F = G.F;
  Vec phi(static_cast<Eigen::Index>(G.M));
  double s = 1.0 / std::sqrt(static_cast<double>(G.M));
  for (std::uint64_t ui = 0; ui < G.M; ++ui) {
    Point u = point_from_index(F, G.m, ui);
    FieldElement dot = F.zero();
    for (int j = 0; j < G.m; ++j) dot = F.add(dot, F.mul(u[j], alpha[j]));
    phi(static_cast<Eigen::Index>(ui)) = s * F.character(dot);
  }
  return phi;
}

std::vector<CharacterEigenpair> character_eigensystem(const HypercubeGraph& G) {
  std::vector<CharacterEigenpair> out;
  for (std::uint64_t ai = 0; ai < G.M; ++ai) {
    Point a = point_from_index(G.F, G.m, ai);
    int w = weight_of(a);
    out.push_back({a, w, (1.0 / static_cast<double>(G.M)) * (G.m - w) / G.m});
  }
  return out;
}

SpectrumCheck verify_spectrum(const HypercubeGraph& G) {
  SpectrumCheck c;
  Eigen::MatrixXd K = adjacency(G);
  Mat Kc = K.cast<cplx>();
  auto eig = character_eigensystem(G);
  Eigen::Index M = static_cast<Eigen::Index>(G.M);
  Mat Phi(M, M);
  Mat recon = Mat::Zero(M, M);
  for (Eigen::Index k = 0; k < M; ++k) {
    Vec phi = character_vector(G, eig[k].alpha);
    Phi.col(k) = phi;
    c.eigen_residual = std::max(c.eigen_residual, (Kc * phi - eig[k].eigenvalue * phi).norm());
    recon += eig[k].eigenvalue * phi * phi.adjoint();
  }
  c.gram_residual = (Phi.adjoint() * Phi - Mat::Identity(M, M)).cwiseAbs().maxCoeff();
  c.reconstruction_residual = (Kc - recon).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(G), Eigen::EigenvaluesOnly);
  c.lambda2 = M > 1 ? es.eigenvalues()(1) : 0.0;
  c.lambda2_expected = 1.0 / (G.m * static_cast<double>(G.M));
  return c;
}

double local_variance(const HypercubeGraph& G, const std::vector<Mat>& A, const Mat& psi) {
  if (A.size() != G.M) throw DomainError("local_variance: family must cover every point");
  const Field& F = G.F;
  std::vector<Mat> Apsi;
  for (const auto& a : A) Apsi.push_back(a * psi);
  double s = 0;
  for (std::uint64_t ui = 0; ui < G.M; ++ui) {
    Point u = point_from_index(F, G.m, ui);
    for (int i = 0; i < G.m; ++i)
      for (const auto& x : F.elements()) {
        Point v = u;
        v[i] = F.add(u[i], x);
        s += (Apsi[ui] - Apsi[point_index(F, v)]).squaredNorm();
      }
  }
  return 0.5 * s / (static_cast<double>(G.M) * G.m * F.q());
}

double global_variance(const HypercubeGraph& G, const std::vector<Mat>& A, const Mat& psi) {
  if (A.size() != G.M) throw DomainError("global_variance: family must cover every point");
  std::vector<Mat> Apsi;
  for (const auto& a : A) Apsi.push_back(a * psi);
  double s = 0;
  for (std::uint64_t u = 0; u < G.M; ++u)
    for (std::uint64_t v = 0; v < G.M; ++v) s += (Apsi[u] - Apsi[v]).squaredNorm();
  return 0.5 * s / (static_cast<double>(G.M) * static_cast<double>(G.M));
}

PointsVarianceReport points_variance_diagnostics(const QuantumStrategy& s, const SubMeasurement& Gm) {
  const TestParams& P = s.params;
  const Field& F = P.F;
  HypercubeGraph H = hypercube(F, P.m);
  PointsVarianceReport r;
  r.goodness = failure_probabilities(s);
  BoundInputs in{.eps = r.goodness.eps, .delta = r.goodness.delta, .m = P.m, .d = P.d, .q = F.q()};
  r.generalize_b_bound = paper_bound("points_variance.generalize_b", in);
  r.local_bound = paper_bound("points_variance.local", in);
  r.global_bound = paper_bound("points_variance.global", in);

  auto polys = enumerate_polyspace(F, P.m, P.d);
  if (Gm.size() != polys.size()) throw DomainError("points_variance: G must have one outcome per polynomial");
  const auto& A = s.roles[0].points;
  const auto& B = s.roles[0].axis;
  auto val = unipoly_value_table(F, P.d);
  std::uint64_t M = H.M;
  for (std::size_t gi = 0; gi < polys.size(); ++gi) {
    if (Gm[gi].cwiseAbs().maxCoeff() < 1e-14) continue;
    const MultiPoly& g = polys[gi];
    Mat root = psd_sqrt(Gm[gi]);
    Mat psig = apply(Mat(), s.psi, root);
    auto gv = evaluation_table(F, g);
    std::vector<Mat> Ag;  // A^u_{g(u)} psi_g
    for (std::uint64_t u = 0; u < M; ++u) Ag.push_back(A[u][gv[u].value] * psig);
    double loc = 0;
    for (std::uint64_t ui = 0; ui < M; ++ui) {
      Point u = point_from_index(F, P.m, ui);
      for (int i = 0; i < P.m; ++i)
        for (const auto& x : F.elements()) {
          Point v = u;
          v[i] = F.add(u[i], x);
          loc += (Ag[ui] - Ag[point_index(F, v)]).squaredNorm();
        }
    }
    r.local += loc / (static_cast<double>(M) * P.m * F.q());
    double glob = 0;
    for (std::uint64_t u = 0; u < M; ++u)
      for (std::uint64_t v = 0; v < M; ++v) glob += (Ag[u] - Ag[v]).squaredNorm();
    r.global += glob / (static_cast<double>(M) * M);
    // generalize-b on the axis test distribution (u uniform, axis uniform).
    double gb = 0;
    for (std::uint64_t ui = 0; ui < M; ++ui) {
      Point u = point_from_index(F, P.m, ui);
      for (int i = 0; i < P.m; ++i) {
        AxisLine l = axis_line_through(u, i);
        const SubMeasurement& Bl = B[axis_key(F, l)];
        std::size_t gl = unipoly_index(restrict_axis(F, g, l), F.q());
        Mat diff = Mat::Zero(Bl.dim(), Bl.dim());
        for (std::size_t f = 0; f < Bl.size(); ++f)
          if (val[f][u[i].value] == gv[ui].value && f != gl) diff += Bl[f];
        gb += (diff * psig).squaredNorm();
      }
    }
    r.generalize_b += gb / (static_cast<double>(M) * P.m);
  }
  return r;
}

}  // namespace lidtest
