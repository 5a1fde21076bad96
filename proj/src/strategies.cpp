#include "lidtest/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace lidtest {

namespace {

TestParams only(const TestParams& P, Subtest s) {
  TestParams Q = P;
  Q.weights = {Rational(0), Rational(0), Rational(0)};
  Q.weights[static_cast<int>(s)] = 1;
  return Q;
}

UniPoly power_of_linear(const Field& F, FieldElement b, FieldElement v, int e, int bound) {
  UniPoly r = zero_unipoly(F, bound);
  r.coeffs[0] = F.one();
  for (int k = 0; k < e; ++k) {
    UniPoly n = zero_unipoly(F, bound);
    for (int i = 0; i <= bound; ++i) {
      n.coeffs[i] = F.add(n.coeffs[i], F.mul(r.coeffs[i], b));
      if (i + 1 <= bound) n.coeffs[i + 1] = F.add(n.coeffs[i + 1], F.mul(r.coeffs[i], v));
    }
    r = n;
  }
  return r;
}

UniPoly random_unipoly(const Field& F, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
  UniPoly f = zero_unipoly(F, bound);
  for (auto& c : f.coeffs) c = F.elem(pick(rng));
  return f;
}

// Evaluation tables shared across rounds.
struct Evaluator {
  const QuantumStrategy& s;
  std::vector<std::vector<std::uint32_t>> axis_val;
  std::vector<std::vector<std::uint32_t>> diag_val;

  explicit Evaluator(const QuantumStrategy& st)
      : s(st),
        axis_val(unipoly_value_table(st.params.F, st.params.d)),
        diag_val(unipoly_value_table(st.params.F, st.params.m * st.params.d)) {}

  SubMeasurement evaluated(const SubMeasurement& L, const std::vector<std::vector<std::uint32_t>>& val,
                           FieldElement t) const {
    std::vector<std::size_t> map(L.size());
    for (std::size_t f = 0; f < L.size(); ++f) map[f] = val[f][t.value];
    return post_process(L, map, s.params.q());
  }

  double accept(const RoundSample& r) const {
    const Field& F = s.params.F;
    std::uint64_t pu = point_index(F, r.u);
    if (r.subtest == Subtest::SelfCons) {
      const auto& X = s.roles[0].points.at(pu);
      const auto& Y = s.roles[1].points.at(pu);
      double p = 0;
      for (std::size_t a = 0; a < X.size(); ++a) p += expect(s.psi, X[a], Y[a]).real();
      return p;
    }
    int lr = static_cast<int>(r.line_role);
    SubMeasurement line;
    if (r.subtest == Subtest::Axis) {
      line = evaluated(s.roles[lr].axis.at(axis_key(F, *r.axis)), axis_val, r.t);
    } else {
      const auto& L = s.roles[lr].diag.at(diag_key(F, *r.diag));
      line = r.diag->degenerate() ? L : evaluated(L, diag_val, r.t);
    }
    const auto& pt = s.roles[1 - lr].points.at(pu);
    double p = 0;
    for (int a = 0; a < F.q(); ++a)
      p += (lr == 0 ? expect(s.psi, line[a], pt[a]) : expect(s.psi, pt[a], line[a])).real();
    return p;
  }
};

Mat block_diag(const Mat& a, const Mat& b) {
  Mat r = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

SubMeasurement block_diag(const SubMeasurement& a, const SubMeasurement& b) {
  if (a.size() != b.size()) throw DomainError("symmetrize: role families have different outcome sets");
  SubMeasurement r;
  for (std::size_t i = 0; i < a.size(); ++i) r.ops.push_back(block_diag(a[i], b[i]));
  return r;
}

Mat cayley_rotation(int n, double eta, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      K(i, j) = n01(rng);
      K(j, i) = -K(i, j);
    }
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd O = (I - 0.5 * eta * K).inverse() * (I + 0.5 * eta * K);
  return O.cast<cplx>();
}

void check_family(const SubMeasurement& M, std::size_t outcomes, int dim, double tol, const std::string& where) {
  if (M.size() != outcomes)
    throw StrategyInvalid(where + ": expected " + std::to_string(outcomes) + " outcomes, got " +
                          std::to_string(M.size()));
  if (M.dim() != dim) throw StrategyInvalid(where + ": operator dimension mismatch");
  MeasurementCheck c = check_measurement(M, tol);
  if (!c.ok) throw StrategyInvalid(where + ": " + c.message);
}

bool same_family(const SubMeasurement& a, const SubMeasurement& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].rows() != b[i].rows() || (a[i] - b[i]).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

}  // namespace

Goodness to_double(const ExactGoodness& g) {
  return Goodness{static_cast<double>(g.eps), static_cast<double>(g.delta), static_cast<double>(g.gamma)};
}

std::vector<std::vector<std::uint32_t>> unipoly_value_table(const Field& F, int bound) {
  std::uint64_t n = unipoly_count(F.q(), bound);
  std::vector<std::vector<std::uint32_t>> val(n, std::vector<std::uint32_t>(F.q()));
  for (std::uint64_t f = 0; f < n; ++f) {
    UniPoly p = unipoly_from_index(F, bound, f);
    for (int t = 0; t < F.q(); ++t) val[f][t] = evaluate(F, p, F.elem(t)).value;
  }
  return val;
}

std::vector<std::uint64_t> diagonal_line_keys(const TestParams& P) {
  std::set<std::uint64_t> keys;
  for_each_round(only(P, Subtest::Diag), [&](const RoundSample& r) {
    if (r.line_role == Role::A) keys.insert(diag_key(P.F, *r.diag));
  });
  return {keys.begin(), keys.end()};
}

Answer ClassicalStrategy::answer(const Question& q) const {
  const Field& F = params.F;
  const ClassicalTable& T = roles[static_cast<int>(q.role)];
  if (const auto* p = std::get_if<PointQ>(&q.body)) return T.points.at(point_index(F, p->u));
  if (const auto* a = std::get_if<AxisQ>(&q.body)) return T.axis.at(axis_key(F, a->line));
  const auto& l = std::get<DiagQ>(q.body).line;
  const UniPoly& f = T.diag.at(diag_key(F, l));
  if (l.degenerate()) return f.coeffs.at(0);
  return f;
}

ClassicalStrategy honest_strategy(const TestParams& P, const MultiPoly& g) {
  P.validate();
  if (g.m != P.m || g.d != P.d) throw DomainError("honest_strategy: polynomial shape differs from params");
  const Field& F = P.F;
  ClassicalTable T;
  T.points = evaluation_table(F, g);
  std::uint64_t M = space_size(F, P.m);
  for (std::uint64_t k = 0; k < M * P.m; ++k) T.axis.push_back(restrict_axis(F, g, axis_from_key(F, P.m, k)));
  for (std::uint64_t k : diagonal_line_keys(P)) {
    DiagonalLine l = diag_from_key(F, P.m, k);
    T.diag[k] = l.degenerate() ? UniPoly{{evaluate(F, g, l.base)}} : restrict_diagonal(F, g, l);
  }
  return ClassicalStrategy{P, {T, T}};
}

ClassicalStrategy example_1_5(const TestParams& P) {
  P.validate();
  if (P.d + 1 > P.q() - 1) throw DomainError("example_1_5: requires d + 1 <= q - 1");
  if (P.m < 2) throw DomainError("example_1_5: requires m >= 2 so diagonal answers fit degree md");
  const Field& F = P.F;
  int e = P.d + 1;
  ClassicalTable T;
  std::uint64_t M = space_size(F, P.m);
  for (std::uint64_t i = 0; i < M; ++i) T.points.push_back(F.pow(point_from_index(F, P.m, i)[0], e));
  for (std::uint64_t k = 0; k < M * P.m; ++k) {
    AxisLine l = axis_from_key(F, P.m, k);
    UniPoly f = zero_unipoly(F, P.d);
    if (l.axis != 0) f.coeffs[0] = F.pow(l.base[0], e);  // constant along other axes
    T.axis.push_back(f);
  }
  for (std::uint64_t k : diagonal_line_keys(P)) {
    DiagonalLine l = diag_from_key(F, P.m, k);
    T.diag[k] = l.degenerate() ? UniPoly{{F.pow(l.base[0], e)}}
                               : power_of_linear(F, l.base[0], l.dir[0], e, P.m * P.d);
  }
  return ClassicalStrategy{P, {T, T}};
}

ClassicalStrategy random_classical(const TestParams& P, std::mt19937_64& rng) {
  P.validate();
  const Field& F = P.F;
  std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
  ClassicalStrategy s{P, {}};
  std::uint64_t M = space_size(F, P.m);
  auto keys = diagonal_line_keys(P);
  for (auto& T : s.roles) {
    for (std::uint64_t i = 0; i < M; ++i) T.points.push_back(F.elem(pick(rng)));
    for (std::uint64_t k = 0; k < M * P.m; ++k) T.axis.push_back(random_unipoly(F, P.d, rng));
    for (std::uint64_t k : keys)
      T.diag[k] = diag_from_key(F, P.m, k).degenerate() ? random_unipoly(F, 0, rng)
                                                        : random_unipoly(F, P.m * P.d, rng);
  }
  return s;
}

ExactGoodness failure_probabilities(const ClassicalStrategy& s) {
  std::array<Rational, 3> fail{};
  for (Subtest st : {Subtest::Axis, Subtest::SelfCons, Subtest::Diag}) {
    Rational f = 0;
    for_each_round(only(s.params, st), [&](const RoundSample& r) {
      if (!verdict(s.params.F, r, s.answer(r.question(Role::A)), s.answer(r.question(Role::B)))) f += r.mass;
    });
    fail[static_cast<int>(st)] = f;
  }
  return ExactGoodness{fail[0], fail[1], fail[2]};
}

ExactGoodness failure_probabilities(const RandomizedStrategy& s) {
  ExactGoodness g{Rational(0), Rational(0), Rational(0)};
  for (const auto& [w, c] : s.mixture) {
    ExactGoodness f = failure_probabilities(c);
    g.eps += w * f.eps;
    g.delta += w * f.delta;
    g.gamma += w * f.gamma;
  }
  return g;
}

Goodness failure_probabilities(const QuantumStrategy& s) {
  Evaluator ev(s);
  std::array<double, 3> fail{};
  for (Subtest st : {Subtest::Axis, Subtest::SelfCons, Subtest::Diag}) {
    double f = 0;
    for_each_round(only(s.params, st),
                   [&](const RoundSample& r) { f += static_cast<double>(r.mass) * (1.0 - ev.accept(r)); });
    fail[static_cast<int>(st)] = f;
  }
  return Goodness{fail[0], fail[1], fail[2]};
}

double accept_probability(const QuantumStrategy& s, const RoundSample& r) { return Evaluator(s).accept(r); }

Rational paper_axis_loss(const ClassicalStrategy& s) {
  const Field& F = s.params.F;
  Rational loss = 0;
  for_each_round(only(s.params, Subtest::Axis), [&](const RoundSample& r) {
    int lr = static_cast<int>(r.line_role);
    const UniPoly& f = s.roles[lr].axis.at(axis_key(F, *r.axis));
    const auto& pts = s.roles[1 - lr].points;
    for (const auto& t : F.elements()) {
      if (!(evaluate(F, f, t) == pts.at(point_index(F, axis_point(F, *r.axis, t))))) {
        loss += r.mass;
        return;
      }
    }
  });
  return loss;
}

Rational max_points_agreement(const ClassicalStrategy& s) {
  const Field& F = s.params.F;
  const auto& pts = s.roles[0].points;
  std::uint64_t n = space_size(F, s.params.m);
  std::uint64_t best = 0;
  for_each_poly(F, s.params.m, s.params.d, [&](std::uint64_t, const MultiPoly& g) {
    std::uint64_t agree = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      if (evaluate(F, g, point_from_index(F, s.params.m, i)) == pts[i]) ++agree;
    best = std::max(best, agree);
  });
  return Rational(best) / Rational(n);
}

QuantumStrategy embed_classical(const RandomizedStrategy& s) {
  if (s.mixture.empty()) throw DomainError("embed_classical: empty mixture");
  const TestParams& P = s.params;
  const Field& F = P.F;
  int D = static_cast<int>(s.mixture.size());
  QuantumStrategy q;
  q.params = P;
  q.psi = Mat::Zero(D, D);
  for (int i = 0; i < D; ++i) q.psi(i, i) = std::sqrt(static_cast<double>(s.mixture[i].first));
  std::uint64_t M = space_size(F, P.m);
  std::size_t nax = unipoly_count(F.q(), P.d);
  auto keys = diagonal_line_keys(P);
  auto indicator = [&](std::size_t outcomes, const std::function<std::size_t(const ClassicalStrategy&)>& label) {
    SubMeasurement A;
    A.ops.assign(outcomes, Mat::Zero(D, D));
    for (int i = 0; i < D; ++i) A[label(s.mixture[i].second)](i, i) = 1.0;
    return A;
  };
  for (int r = 0; r < 2; ++r) {
    RoleFamilies& R = q.roles[r];
    for (std::uint64_t u = 0; u < M; ++u)
      R.points.push_back(indicator(F.q(), [&](const ClassicalStrategy& c) { return c.roles[r].points.at(u).value; }));
    for (std::uint64_t k = 0; k < M * P.m; ++k)
      R.axis.push_back(indicator(nax, [&](const ClassicalStrategy& c) { return unipoly_index(c.roles[r].axis.at(k), F.q()); }));
    for (std::uint64_t k : keys) {
      bool deg = diag_from_key(F, P.m, k).degenerate();
      std::size_t n = deg ? F.q() : unipoly_count(F.q(), P.m * P.d);
      R.diag[k] = indicator(n, [&](const ClassicalStrategy& c) {
        const UniPoly& f = c.roles[r].diag.at(k);
        return deg ? static_cast<std::size_t>(f.coeffs.at(0).value) : unipoly_index(f, F.q());
      });
    }
  }
  bool sym = true;
  for (const auto& [w, c] : s.mixture)
    sym = sym && c.roles[0].points == c.roles[1].points && c.roles[0].axis == c.roles[1].axis &&
          c.roles[0].diag == c.roles[1].diag;
  q.symmetric = sym;
  return q;
}

QuantumStrategy embed_classical(const ClassicalStrategy& s) {
  return embed_classical(RandomizedStrategy{s.params, {{Rational(1), s}}});
}

QuantumStrategy honest_quantum(const TestParams& P, const std::vector<MultiPoly>& seeds) {
  RandomizedStrategy r{P, {}};
  for (const auto& g : seeds) r.mixture.emplace_back(Rational(1, static_cast<long>(seeds.size())), honest_strategy(P, g));
  return embed_classical(r);
}

QuantumStrategy perturb(const QuantumStrategy& s, double eta, std::mt19937_64& rng) {
  if (s.psi.rows() != s.psi.cols()) throw DomainError("perturb: needs equal local dimensions");
  int D = static_cast<int>(s.psi.rows());
  QuantumStrategy out = s;
  auto rotate = [&](SubMeasurement& a, SubMeasurement& b) {
    Mat O = cayley_rotation(D, eta, rng);
    for (auto& op : a.ops) op = hermitian_part(O * op * O.transpose());
    for (auto& op : b.ops) op = hermitian_part(O * op * O.transpose());
  };
  for (std::size_t u = 0; u < out.roles[0].points.size(); ++u) rotate(out.roles[0].points[u], out.roles[1].points[u]);
  for (std::size_t k = 0; k < out.roles[0].axis.size(); ++k) rotate(out.roles[0].axis[k], out.roles[1].axis[k]);
  for (auto& [k, op] : out.roles[0].diag) rotate(op, out.roles[1].diag.at(k));
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXd E(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j <= i; ++j) E(i, j) = E(j, i) = n01(rng);
  out.psi = s.psi + (eta / std::sqrt(static_cast<double>(D))) * E.cast<cplx>();
  out.psi /= out.psi.norm();
  return out;
}

void validate(const ClassicalStrategy& s) {
  const TestParams& P = s.params;
  P.validate();
  const Field& F = P.F;
  std::uint64_t M = space_size(F, P.m);
  auto keys = diagonal_line_keys(P);
  for (int r = 0; r < 2; ++r) {
    const auto& T = s.roles[r];
    std::string role = to_string(static_cast<Role>(r));
    if (T.points.size() != M) throw StrategyInvalid("role " + role + ": points table has wrong size");
    if (T.axis.size() != M * P.m) throw StrategyInvalid("role " + role + ": axis table has wrong size");
    for (const auto& f : T.axis)
      if (degree(f) > P.d) throw StrategyInvalid("role " + role + ": axis answer exceeds degree d");
    for (std::uint64_t k : keys) {
      auto it = T.diag.find(k);
      if (it == T.diag.end()) throw StrategyInvalid("role " + role + ": missing diagonal line " + std::to_string(k));
      if (degree(it->second) > P.m * P.d) throw StrategyInvalid("role " + role + ": diagonal answer exceeds degree md");
    }
  }
}

void validate(const QuantumStrategy& s, double tol) {
  const TestParams& P = s.params;
  P.validate();
  const Field& F = P.F;
  if (s.psi.rows() > 64 || s.psi.cols() > 64) throw StrategyInvalid("state: local dimension exceeds 64");
  if (std::abs(s.psi.norm() - 1.0) > tol) throw StrategyInvalid("state: not normalised");
  std::uint64_t M = space_size(F, P.m);
  std::size_t nax = unipoly_count(F.q(), P.d), ndiag = unipoly_count(F.q(), P.m * P.d);
  auto keys = diagonal_line_keys(P);
  for (int r = 0; r < 2; ++r) {
    const auto& R = s.roles[r];
    int dim = s.dim(static_cast<Role>(r));
    std::string role = "role " + to_string(static_cast<Role>(r));
    if (R.points.size() != M) throw StrategyInvalid(role + ": points family has wrong size");
    if (R.axis.size() != M * P.m) throw StrategyInvalid(role + ": axis family has wrong size");
    for (std::uint64_t u = 0; u < M; ++u) check_family(R.points[u], F.q(), dim, tol, role + " point " + std::to_string(u));
    for (std::uint64_t k = 0; k < M * P.m; ++k) check_family(R.axis[k], nax, dim, tol, role + " axis line " + std::to_string(k));
    for (std::uint64_t k : keys) {
      auto it = R.diag.find(k);
      if (it == R.diag.end()) throw StrategyInvalid(role + ": missing diagonal line " + std::to_string(k));
      bool deg = diag_from_key(F, P.m, k).degenerate();
      check_family(it->second, deg ? F.q() : ndiag, dim, tol, role + " diagonal line " + std::to_string(k));
    }
  }
  if (s.symmetric) {
    if (!swap_invariant(s.psi, tol)) throw StrategyInvalid("symmetric strategy: state not swap invariant");
    const auto& a = s.roles[0];
    const auto& b = s.roles[1];
    for (std::size_t u = 0; u < a.points.size(); ++u)
      if (!same_family(a.points[u], b.points[u], tol)) throw StrategyInvalid("symmetric strategy: role families differ");
    for (std::size_t k = 0; k < a.axis.size(); ++k)
      if (!same_family(a.axis[k], b.axis[k], tol)) throw StrategyInvalid("symmetric strategy: role families differ");
    for (const auto& [k, op] : a.diag)
      if (!same_family(op, b.diag.at(k), tol)) throw StrategyInvalid("symmetric strategy: role families differ");
  }
}

QuantumStrategy symmetrize(const QuantumStrategy& s) {
  if (s.psi.rows() != s.psi.cols()) throw DomainError("symmetrize: requires D_A = D_B");
  Eigen::Index D = s.psi.rows();
  QuantumStrategy out;
  out.params = s.params;
  out.psi = Mat::Zero(2 * D, 2 * D);
  out.psi.block(0, D, D, D) = s.psi / std::sqrt(2.0);
  out.psi.block(D, 0, D, D) = s.psi.transpose() / std::sqrt(2.0);
  RoleFamilies R;
  const auto& a = s.roles[0];
  const auto& b = s.roles[1];
  for (std::size_t u = 0; u < a.points.size(); ++u) R.points.push_back(block_diag(a.points[u], b.points[u]));
  for (std::size_t k = 0; k < a.axis.size(); ++k) R.axis.push_back(block_diag(a.axis[k], b.axis[k]));
  for (const auto& [k, op] : a.diag) R.diag[k] = block_diag(op, b.diag.at(k));
  out.roles = {R, R};
  out.symmetric = true;
  return out;
}

SubMeasurement unsymmetrize_measurement(const SubMeasurement& G, Role role) {
  if (G.dim() % 2) throw DomainError("unsymmetrize: dimension is not even");
  int D = G.dim() / 2;
  int off = role == Role::A ? 0 : D;
  SubMeasurement out;
  for (const auto& op : G.ops) out.ops.push_back(op.block(off, off, D, D));
  return out;
}

namespace {

template <class Accept>
McEstimate run_mc(const TestParams& P, std::uint64_t rounds, std::uint64_t seed, Accept accept) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::array<std::uint64_t, 3> fails{};
  McEstimate est;
  for (std::uint64_t n = 0; n < rounds; ++n) {
    RoundSample r = sample_round(P, rng);
    int st = static_cast<int>(r.subtest);
    ++est.rounds[st];
    if (unif(rng) >= accept(r)) ++fails[st];
  }
  auto rate = [&](int i) { return est.rounds[i] ? static_cast<double>(fails[i]) / est.rounds[i] : 0.0; };
  auto se = [&](int i) {
    double p = rate(i);
    return est.rounds[i] ? std::sqrt(p * (1 - p) / est.rounds[i]) : 0.0;
  };
  est.failure = Goodness{rate(0), rate(1), rate(2)};
  est.stderr_ = Goodness{se(0), se(1), se(2)};
  return est;
}

}  // namespace

McEstimate monte_carlo(const ClassicalStrategy& s, std::uint64_t rounds, std::uint64_t seed) {
  return run_mc(s.params, rounds, seed, [&](const RoundSample& r) {
    return verdict(s.params.F, r, s.answer(r.question(Role::A)), s.answer(r.question(Role::B))) ? 1.0 : 0.0;
  });
}

McEstimate monte_carlo(const QuantumStrategy& s, std::uint64_t rounds, std::uint64_t seed) {
  Evaluator ev(s);
  return run_mc(s.params, rounds, seed, [&](const RoundSample& r) { return ev.accept(r); });
}

}  // namespace lidtest
