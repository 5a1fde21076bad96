#include "lidtest/improvement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lidtest/constants.hpp"

namespace lidtest {

namespace {

struct PolyTables {
  std::vector<std::vector<std::uint32_t>> val;  // val[h][u]
};

PolyTables poly_tables(const TestParams& P) {
  PolyTables t;
  for_each_poly(P.F, P.m, P.d, [&](std::uint64_t, const MultiPoly& g) {
    auto ev = evaluation_table(P.F, g);
    std::vector<std::uint32_t> row;
    for (const auto& e : ev) row.push_back(e.value);
    t.val.push_back(std::move(row));
  });
  return t;
}

// H_{[h(u)=a]} for every u.
Family evaluated_family(const TestParams& P, const PolyTables& t, const SubMeasurement& H) {
  std::uint64_t M = space_size(P.F, P.m);
  Family out;
  for (std::uint64_t u = 0; u < M; ++u) {
    std::vector<std::size_t> map(H.size());
    for (std::size_t h = 0; h < H.size(); ++h) map[h] = t.val[h][u];
    out.push_back(post_process(H, map, P.q()));
  }
  return out;
}

void fill_report(const QuantumStrategy& s, const PolyTables& t, const SubMeasurement& H, const Mat& Z,
                 const SdpInstance& inst, ImproveReport& r) {
  const Mat& psi = s.psi;
  int n = H.dim();
  r.completeness = completeness(H, psi);
  r.a_consistency = points_consistency(s, H);
  if (r.projective) {
    LocalFamily L{{}}, R{{}};
    for (const auto& op : H.ops) {
      L[0].push_back(Local{op, Mat()});
      R[0].push_back(Local{Mat(), op});
    }
    r.ssc_deficit = state_distance(L, R, psi, Dist{1.0});
  } else {
    r.ssc_deficit = strong_self_consistency(H, psi);
  }
  Mat I = Mat::Identity(n, n);
  r.boundedness = expect(psi, Z, I - H.total()).real();
  Family Hu = evaluated_family(s.params, t, H);
  double agree = agreement(s.roles[0].points, Hu, psi, uniform_dist(Hu.size()));
  r.boundedness_helper = expect(psi, Z, Mat()).real() - agree;
  r.z_dominance = std::numeric_limits<double>::infinity();
  for (const auto& a : inst.A) r.z_dominance = std::min(r.z_dominance, min_eigenvalue(Z - a));
  r.submeasurement_excess = max_eigenvalue(H.total()) - 1.0;
  r.projectivity = projectivity_residual(H);
}

}  // namespace

SubMeasurement seed_measurement(const TestParams& P, const std::vector<MultiPoly>& seeds) {
  int D = static_cast<int>(seeds.size());
  SubMeasurement G;
  G.ops.assign(polyspace_size(P.F, P.m, P.d), Mat::Zero(D, D));
  for (int s = 0; s < D; ++s) G[poly_index(seeds[s], P.q())](s, s) = 1.0;
  return G;
}

double points_consistency(const QuantumStrategy& s, const SubMeasurement& H) {
  PolyTables t = poly_tables(s.params);
  if (H.size() != t.val.size()) throw DomainError("points_consistency: H must have one outcome per polynomial");
  Family Hu = evaluated_family(s.params, t, H);
  return consistency(s.roles[0].points, Hu, s.psi, uniform_dist(Hu.size()));
}

ImproveResult improve(const QuantumStrategy& s, const SubMeasurement& G) {
  const TestParams& P = s.params;
  PolyTables t = poly_tables(P);
  if (G.size() != t.val.size()) throw DomainError("improve: G must have one outcome per polynomial");
  ImproveResult out;
  ImproveReport& r = out.report;
  r.goodness = failure_probabilities(s);
  r.nu = points_consistency(s, G);
  BoundInputs in{.eps = r.goodness.eps, .delta = r.goodness.delta, .m = P.m, .d = P.d, .q = P.q()};
  r.zeta = paper_bound("improve.projective", in);
  r.zeta_hat = paper_bound("improve.helper", in);

  SdpInstance inst = build_instance(s);
  out.sdp = solve(inst);
  out.Z = out.sdp.Z;
  const auto& A = s.roles[0].points;
  std::uint64_t M = space_size(P.F, P.m);
  int n = s.dim(Role::A);
  for (std::size_t h = 0; h < t.val.size(); ++h) {
    Mat Hh = Mat::Zero(n, n);
    for (std::uint64_t u = 0; u < M; ++u) {
      const Mat& a = A[u][t.val[h][u]];
      Hh += a * out.sdp.T[h] * a;
    }
    out.H.ops.push_back(hermitian_part(Hh / static_cast<double>(M)));
  }
  fill_report(s, t, out.H, out.Z, inst, r);
  return out;
}

ImproveResult projective_improve(const QuantumStrategy& s, const SubMeasurement& G) {
  ImproveResult out = improve(s, G);
  OrthogonalizeResult o = orthogonalize_sub(out.H, s.psi);
  out.H = o.P;
  out.report.projective = true;
  PolyTables t = poly_tables(s.params);
  fill_report(s, t, out.H, out.Z, build_instance(s), out.report);
  return out;
}

}  // namespace lidtest
