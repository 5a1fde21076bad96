#include "lidtest/pasting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lidtest/constants.hpp"
#include "lidtest/sdp.hpp"

namespace lidtest {

namespace {

constexpr std::uint64_t kTupleCap = 100000;

bool is_zero(const Mat& x) { return x.size() == 0 || x.cwiseAbs().maxCoeff() < 1e-14; }

std::uint64_t falling(int q, int k) {
  std::uint64_t n = 1;
  for (int i = 0; i < k; ++i) {
    n *= static_cast<std::uint64_t>(q - i);
    if (n > kTupleCap) return kTupleCap + 1;
  }
  return n;
}

std::uint64_t power_capped(int q, int k) {
  std::uint64_t n = 1;
  for (int i = 0; i < k; ++i) {
    n *= static_cast<std::uint64_t>(q);
    if (n > kTupleCap) return kTupleCap + 1;
  }
  return n;
}

// Coordinate tuples for the average; sampled when the set exceeds the cap.
std::vector<std::vector<FieldElement>> coordinate_tuples(const Field& F, int k, bool distinct,
                                                         const PastingParams& p, bool& exact) {
  int q = F.q();
  auto els = F.elements();
  std::uint64_t n = distinct ? falling(q, k) : power_capped(q, k);
  std::vector<std::vector<FieldElement>> out;
  if (n <= kTupleCap) {
    exact = true;
    if (distinct) return distinct_tuples(F, k);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      std::vector<FieldElement> t(k);
      std::uint64_t r = idx;
      for (int i = k - 1; i >= 0; --i) {
        t[i] = els[r % q];
        r /= q;
      }
      out.push_back(std::move(t));
    }
    return out;
  }
  exact = false;
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<int> pick(0, q - 1);
  for (std::uint64_t s = 0; s < p.samples; ++s) {
    std::vector<FieldElement> t;
    if (distinct) {
      auto pool = els;
      for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> j(i, q - 1);
        std::swap(pool[i], pool[j(rng)]);
        t.push_back(pool[i]);
      }
    } else {
      for (int i = 0; i < k; ++i) t.push_back(els[pick(rng)]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

// restriction[h][x] = poly_index of h(., x) in P(m,q,d).
std::vector<std::vector<std::size_t>> restriction_table(const Field& F, int m, int d) {
  std::vector<std::vector<std::size_t>> t;
  for_each_poly(F, m + 1, d, [&](std::uint64_t, const MultiPoly& h) {
    std::vector<std::size_t> row;
    for (const auto& x : F.elements()) row.push_back(poly_index(restrict_last(F, h, x), F.q()));
    t.push_back(std::move(row));
  });
  return t;
}

// Mass of tuples with at least d+1 non-bottom entries, any outcomes.
Mat weighty_mass(const std::vector<SubMeasurement>& Ghat, const std::vector<FieldElement>& xs, int d) {
  int n = Ghat[0].dim();
  int k = static_cast<int>(xs.size());
  std::vector<Mat> S(d + 2, Mat::Zero(n, n));
  S[0] = Mat::Identity(n, n);
  for (int i = k - 1; i >= 0; --i) {
    const SubMeasurement& G = Ghat[xs[i].value];
    std::size_t bot = G.size() - 1;
    std::vector<Mat> next(d + 2, Mat::Zero(n, n));
    for (int c = 0; c <= d + 1; ++c) {
      if (is_zero(S[c])) continue;
      for (std::size_t g = 0; g < G.size(); ++g) {
        if (is_zero(G[g])) continue;
        int c2 = g == bot ? c : std::min(c + 1, d + 1);
        next[c2] += G[g] * S[c] * G[g];
      }
    }
    S = std::move(next);
  }
  return S[d + 1];
}

}  // namespace

std::vector<std::vector<FieldElement>> distinct_tuples(const Field& F, int k) {
  int q = F.q();
  if (k < 1 || k > q) throw DomainError("distinct_tuples: need 1 <= k <= q");
  if (falling(q, k) > kTupleCap) throw GuardExceeded("distinct_tuples: more than 1e5 tuples");
  auto els = F.elements();
  std::vector<std::vector<FieldElement>> out;
  std::vector<FieldElement> cur;
  std::vector<bool> used(q, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < q; ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(els[i]);
      self(self);
      cur.pop_back();
      used[i] = false;
    }
  };
  rec(rec);
  return out;
}

TvCheck tv_distance_bound_check(int q, int k) {
  if (k < 1 || k > q) throw DomainError("tv_distance_bound_check: need 1 <= k <= q");
  Rational frac = 1;
  for (int i = 0; i < k; ++i) frac *= Rational(q - i, q);
  return TvCheck{1 - frac, Rational(k * (k - 1), 2 * q), Rational(k * k, q)};
}

std::vector<SubMeasurement> complete_slices(const std::vector<SubMeasurement>& G, double tol) {
  std::vector<SubMeasurement> out;
  for (const auto& g : G) {
    if (!check_submeasurement(g, tol).ok || !is_projective(g, tol))
      throw DomainError("pasting: slice sub-measurements must be projective");
    out.push_back(complete(g));
  }
  return out;
}

Mat sandwich(const std::vector<SubMeasurement>& Ghat, const std::vector<FieldElement>& xs,
             const std::vector<std::size_t>& gs) {
  if (xs.size() != gs.size() || xs.empty()) throw DomainError("sandwich: tuple length mismatch");
  int n = Ghat[0].dim();
  Mat inner = Mat::Identity(n, n);
  for (std::size_t i = xs.size(); i-- > 0;) {
    const Mat& g = Ghat[xs[i].value][gs[i]];
    inner = g * inner * g;
  }
  return inner;
}

Mat sandwich_total(const std::vector<SubMeasurement>& Ghat, const std::vector<FieldElement>& xs) {
  int n = Ghat[0].dim();
  Mat total = Mat::Zero(n, n);
  // Left products L = G_{g_1} ... G_{g_i}, pruned when zero; sandwich = L L^*.
  auto rec = [&](auto&& self, std::size_t i, const Mat& L) -> void {
    if (i == xs.size()) {
      total += L * L.adjoint();
      return;
    }
    for (const auto& g : Ghat[xs[i].value].ops) {
      Mat next = L * g;
      if (!is_zero(next)) self(self, i + 1, next);
    }
  };
  rec(rec, 0, Mat::Identity(n, n));
  return total;
}

std::optional<MultiPoly> interpolate_tuple(const Field& F, int d, const std::vector<FieldElement>& xs,
                                           const std::vector<std::optional<MultiPoly>>& gs) {
  std::vector<std::pair<FieldElement, MultiPoly>> slices;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (gs[i]) slices.emplace_back(xs[i], *gs[i]);
  if (static_cast<int>(slices.size()) < d + 1) return std::nullopt;
  std::vector<std::pair<FieldElement, MultiPoly>> first(slices.begin(), slices.begin() + d + 1);
  MultiPoly h = interpolate_parallel(F, first, d);
  for (const auto& [x, g] : slices)
    if (!(restrict_last(F, h, x) == g)) return std::nullopt;
  return h;
}

PastedMeasurement pasted_measurement(const Field& F, int m, int d, const std::vector<SubMeasurement>& G,
                                     const PastingParams& p) {
  int q = F.q();
  int k = p.k;
  if (static_cast<int>(G.size()) != q) throw DomainError("pasted_measurement: need one slice per x in F_q");
  if (k < d + 1) throw DomainError("pasted_measurement: need k >= d+1");
  if (p.distinct && k > q) throw DomainError("pasted_measurement: need k <= q");
  std::uint64_t slice_size = polyspace_size(F, m, d);
  for (const auto& g : G)
    if (g.size() != slice_size) throw DomainError("pasted_measurement: slice outcomes must be P(m,q,d)");
  std::uint64_t out_size = polyspace_size(F, m + 1, d);
  int n = G[0].dim();
  if (static_cast<double>(n) * n * out_size > 5e7) throw GuardExceeded("pasted_measurement: dim^2 |P(m+1,q,d)| exceeds 5e7");

  auto Ghat = complete_slices(G);
  auto rl = restriction_table(F, m, d);
  std::vector<std::vector<bool>> zero(q);
  for (int x = 0; x < q; ++x)
    for (const auto& op : Ghat[x].ops) zero[x].push_back(is_zero(op));

  PastedMeasurement out;
  auto tuples = coordinate_tuples(F, k, p.distinct, p, out.exact);
  out.tuples = tuples.size();
  double w = 1.0 / static_cast<double>(tuples.size());
  out.H.ops.assign(out_size, Mat::Zero(n, n));
  for (const auto& xs : tuples) {
    for (std::size_t h = 0; h < out_size; ++h) {
      int live = 0;
      for (const auto& x : xs) live += !zero[x.value][rl[h][x.value]];
      if (live < d + 1) continue;
      std::vector<Mat> S(d + 2, Mat::Zero(n, n));
      S[0] = Mat::Identity(n, n);
      for (int i = k - 1; i >= 0; --i) {
        int x = xs[i].value;
        const Mat& P = Ghat[x][rl[h][x]];
        const Mat& Q = Ghat[x].ops.back();
        bool pz = zero[x][rl[h][x]], qz = zero[x].back();
        std::vector<Mat> next(d + 2, Mat::Zero(n, n));
        for (int c = 0; c <= d + 1; ++c) {
          if (is_zero(S[c])) continue;
          if (!pz) next[std::min(c + 1, d + 1)] += P * S[c] * P;
          if (!qz) next[c] += Q * S[c] * Q;
        }
        S = std::move(next);
      }
      out.H[h] += w * S[d + 1];
    }
  }
  for (auto& op : out.H.ops) op = hermitian_part(op);
  out.H_meas = out.H;
  out.H_meas[0] += Mat::Identity(n, n) - out.H.total();
  out.excess = max_eigenvalue(out.H.total()) - 1.0;
  return out;
}

double binomial_tail(double p, int k, int d) {
  double s = 0;
  for (int r = d + 1; r <= k; ++r) {
    double c = std::exp(std::lgamma(k + 1.0) - std::lgamma(r + 1.0) - std::lgamma(k - r + 1.0));
    s += c * std::pow(p, r) * std::pow(1.0 - p, k - r);
  }
  return s;
}

Mat binomial_matrix_F(const Mat& X, int k, int d) {
  if (!is_hermitian(X, 1e-9)) throw DomainError("binomial_matrix_F: X must be Hermitian");
  if (min_eigenvalue(X) < -1e-9 || max_eigenvalue(X) > 1 + 1e-9) throw DomainError("binomial_matrix_F: need 0 <= X <= I");
  return spectral_apply(X, [&](double l) { return binomial_tail(std::clamp(l, 0.0, 1.0), k, d); });
}

ChernoffReport chernoff_completeness_check(const Mat& X, const Mat& psi, int k, int d, double theta) {
  if (!(theta > 0 && theta < 1)) throw DomainError("chernoff: theta must lie in (0,1)");
  if (k < 2.0 * d / theta) throw DomainError("chernoff: need k >= 2d/theta");
  ChernoffReport r;
  Mat FX = binomial_matrix_F(X, k, d);
  r.kappa = 1.0 - expect(psi, X, Mat()).real();
  r.measured = expect(psi, FX, Mat()).real();
  r.bound = 1.0 - r.kappa / (1.0 - theta) - std::exp(-theta * theta * k / 2.0);
  r.margin = r.measured - r.bound;
  r.commutator = (FX * X - X * FX).norm();
  r.min_eig = min_eigenvalue(FX);
  r.max_eig = max_eigenvalue(FX);
  return r;
}

bool scalar_ineq_check(double lambda, int d) {
  if (lambda < 0 || lambda > 1 || d < 1) throw DomainError("scalar_ineq_check: need lambda in [0,1], d >= 1");
  double lhs = lambda * (1.0 - std::pow(lambda, d));
  double rhs = 2.0 * std::pow(std::pow(lambda, d + 1) * (1.0 - lambda), 1.0 / (d + 1));
  return lhs <= rhs + 1e-12;
}

std::vector<SubMeasurement> seed_slices(const Field& F, int m, int d, const std::vector<MultiPoly>& seeds) {
  int D = static_cast<int>(seeds.size());
  std::uint64_t n = polyspace_size(F, m, d);
  std::vector<SubMeasurement> out;
  for (const auto& x : F.elements()) {
    SubMeasurement G;
    G.ops.assign(n, Mat::Zero(D, D));
    for (int s = 0; s < D; ++s) G[poly_index(restrict_last(F, seeds[s], x), F.q())](s, s) = 1.0;
    out.push_back(std::move(G));
  }
  return out;
}

SliceHypotheses slice_hypotheses(const QuantumStrategy& s, const std::vector<SubMeasurement>& G) {
  const TestParams& P = s.params;
  const Field& F = P.F;
  int m = P.m - 1, d = P.d, q = F.q();
  if (m < 1) throw DomainError("slice_hypotheses: strategy needs at least two variables");
  if (static_cast<int>(G.size()) != q) throw DomainError("slice_hypotheses: need one slice per x in F_q");
  const Mat& psi = s.psi;
  int n = s.dim(Role::A);
  SliceHypotheses h;
  auto slices = enumerate_polyspace(F, m, d);
  std::vector<std::vector<std::uint32_t>> sval;
  for (const auto& g : slices) {
    std::vector<std::uint32_t> row;
    for (const auto& e : evaluation_table(F, g)) row.push_back(e.value);
    sval.push_back(std::move(row));
  }
  std::uint64_t Mm = space_size(F, m);
  const auto& Apts = s.roles[0].points;
  auto els = F.elements();

  double kappa = 0, self = 0, bounded = 0;
  Family Aux, Gux;
  for (int x = 0; x < q; ++x) {
    const SubMeasurement& Gx = G[x];
    kappa += 1.0 - completeness(Gx, psi);
    LocalFamily L{{}}, R{{}};
    for (const auto& op : Gx.ops) {
      L[0].push_back(Local{op, Mat()});
      R[0].push_back(Local{Mat(), op});
    }
    self += state_distance(L, R, psi, Dist{1.0});
    std::vector<Mat> inst(slices.size(), Mat::Zero(n, n));
    for (std::uint64_t u = 0; u < Mm; ++u) {
      Point pt = point_from_index(F, m, u);
      pt.coords.push_back(els[x]);
      const SubMeasurement& A = Apts[point_index(F, pt)];
      Aux.push_back(A);
      std::vector<std::size_t> map(slices.size());
      for (std::size_t g = 0; g < slices.size(); ++g) {
        map[g] = sval[g][u];
        inst[g] += A[sval[g][u]] / static_cast<double>(Mm);
      }
      Gux.push_back(post_process(Gx, map, q));
    }
    SdpSolution sol = solve(make_instance(inst));
    h.Z.push_back(sol.Z);
    bounded += expect(psi, Mat::Identity(n, n) - Gx.total(), sol.Z).real();
  }
  h.kappa = kappa / q;
  h.self = self / q;
  h.bounded = bounded / q;
  h.consistency = consistency(Aux, Gux, psi, uniform_dist(Aux.size()));
  h.zeta = std::max({h.consistency, h.self, h.bounded, 0.0});
  return h;
}

PastingReport pasting_report(const QuantumStrategy& s, const std::vector<SubMeasurement>& G,
                             const PastingParams& p) {
  const TestParams& P = s.params;
  const Field& F = P.F;
  int m = P.m - 1, d = P.d, q = F.q(), k = p.k;
  if (m < 1) throw DomainError("pasting_report: strategy needs at least two variables");
  if (!s.symmetric) throw DomainError("pasting_report: strategy must be symmetric");
  const Mat& psi = s.psi;
  int n = s.dim(Role::A);
  SliceHypotheses hyp = slice_hypotheses(s, G);
  PastingReport r;
  r.goodness = failure_probabilities(s);
  r.regime = k >= 400 * m * d;

  r.kappa = hyp.kappa;
  r.zeta_consistency = hyp.consistency;
  r.zeta_self = hyp.self;
  r.zeta_bounded = hyp.bounded;
  r.zeta = hyp.zeta;
  BoundInputs in{.eps = r.goodness.eps, .delta = r.goodness.delta, .gamma = r.goodness.gamma, .zeta = r.zeta,
                 .kappa = r.kappa, .m = m, .d = d, .q = q, .k = k};
  r.nu = paper_bound("pasting.nu", in);
  r.sigma = paper_bound("pasting.sigma", in);
  r.nu6 = paper_bound("pasting.nu6", in);
  r.nu7 = paper_bound("pasting.nu7", in);
  r.nu8 = paper_bound("pasting.nu8", in);

  PastedMeasurement pm = pasted_measurement(F, m, d, G, p);
  const auto& Apts = s.roles[0].points;
  std::uint64_t Mm = space_size(F, m);
  r.excess = pm.excess;
  r.h_completeness = completeness(pm.H, psi);

  // Consistency of the completed H with the points.
  auto polys = enumerate_polyspace(F, m + 1, d);
  std::uint64_t M = space_size(F, m + 1);
  std::vector<std::vector<std::uint32_t>> hval;
  for (const auto& h : polys) {
    std::vector<std::uint32_t> row;
    for (const auto& e : evaluation_table(F, h)) row.push_back(e.value);
    hval.push_back(std::move(row));
  }
  Family Hu;
  for (std::uint64_t u = 0; u < M; ++u) {
    std::vector<std::size_t> map(polys.size());
    for (std::size_t h = 0; h < polys.size(); ++h) map[h] = hval[h][u];
    Hu.push_back(post_process(pm.H_meas, map, q));
  }
  r.consistency = consistency(Apts, Hu, psi, uniform_dist(M));

  // H restricted to last-direction lines against B.
  Family Hl, Bl;
  std::uint64_t nf = unipoly_count(q, d);
  for (std::uint64_t u = 0; u < Mm; ++u) {
    Point base = point_from_index(F, m, u);
    base.coords.push_back(F.zero());
    AxisLine l = axis_line_through(base, m);
    std::vector<std::size_t> map(polys.size());
    for (std::size_t h = 0; h < polys.size(); ++h) map[h] = unipoly_index(restrict_axis(F, polys[h], l), q);
    Hl.push_back(post_process(pm.H, map, nf));
    Bl.push_back(s.roles[1].axis[axis_key(F, l)]);
  }
  r.h_b = consistency(Hl, Bl, psi, uniform_dist(Mm));

  // Endpoint quantities of the completeness chain, x uniform over F_q^k.
  auto Ghat = complete_slices(G);
  bool exact = true;
  auto tuples = coordinate_tuples(F, k, false, p, exact);
  Mat mass = Mat::Zero(n, n);
  for (const auto& xs : tuples) mass += weighty_mass(Ghat, xs, d);
  mass /= static_cast<double>(tuples.size());
  double weighty = expect(psi, mass, Mat()).real();
  r.over_all = std::abs(r.h_completeness - weighty);
  Mat Gavg = Mat::Zero(n, n);
  for (const auto& g : G) Gavg += g.total() / static_cast<double>(q);
  r.to_g = std::abs(weighty - expect(psi, binomial_matrix_F(hermitian_part(Gavg), k, d), Mat()).real());
  return r;
}

}  // namespace lidtest
