#include "lidtest/protocol.hpp"

#include <cmath>

namespace lidtest {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// v ranges over points whose last m - i coordinates vanish; idx < q^i.
Point diag_direction(const Field& F, int m, int i, std::uint64_t idx) {
  Point v = zero_point(F, m);
  for (int j = i - 1; j >= 0; --j) {
    v[j] = F.elem(static_cast<std::uint32_t>(idx % F.q()));
    idx /= F.q();
  }
  return v;
}

RoundSample diag_sample(const TestParams& P, Role r, int i, const Point& u, const Point& v, const Rational& mass) {
  RoundSample s;
  s.subtest = Subtest::Diag;
  s.line_role = r;
  s.index = i;
  s.u = u;
  s.v = v;
  s.diag = canonical_line(P.F, u, v);
  s.t = line_parameter(P.F, *s.diag, u);
  s.mass = mass;
  return s;
}

}  // namespace

std::string to_string(Role r) { return r == Role::A ? "A" : "B"; }

std::string to_string(Subtest s) {
  switch (s) {
    case Subtest::Axis: return "axis";
    case Subtest::SelfCons: return "selfcons";
    case Subtest::Diag: return "diag";
  }
  return "?";
}

void TestParams::validate() const {
  if (m < 1) throw DomainError("params: m must be >= 1");
  if (d < 0) throw DomainError("params: d must be >= 0");
  if (F.q() < 2) throw DomainError("params: field not initialised");
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw DomainError("params: negative subtest weight");
    sum += w;
  }
  if (sum != 1) throw DomainError("params: subtest weights must sum to 1");
}

Question RoundSample::question(Role r) const {
  Question qn;
  qn.role = r;
  if (subtest == Subtest::Axis && r == line_role)
    qn.body = AxisQ{*axis};
  else if (subtest == Subtest::Diag && r == line_role)
    qn.body = DiagQ{*diag};
  else
    qn.body = PointQ{u};
  return qn;
}

std::uint64_t support_size(const TestParams& P) {
  P.validate();
  double M = std::pow(static_cast<double>(P.q()), P.m);
  double diag = 0;
  for (int i = 1; i <= P.m; ++i) diag += std::pow(static_cast<double>(P.q()), i);
  double total = 2.0 * M * P.m + M + 2.0 * M * diag;
  if (total > 1e6) throw GuardExceeded("protocol: question support exceeds 1e6");
  std::uint64_t Mi = ipow(P.q(), P.m), di = 0;
  for (int i = 1; i <= P.m; ++i) di += ipow(P.q(), i);
  return 2 * Mi * P.m + Mi + 2 * Mi * di;
}

void for_each_round(const TestParams& P, const RoundVisitor& fn) {
  support_size(P);
  const Field& F = P.F;
  std::uint64_t M = space_size(F, P.m);
  if (P.weights[0] != 0) {
    Rational mass = P.weights[0] / Rational(2 * M * P.m);
    for (Role r : {Role::A, Role::B})
      for (std::uint64_t ui = 0; ui < M; ++ui) {
        Point u = point_from_index(F, P.m, ui);
        for (int i = 0; i < P.m; ++i) {
          RoundSample s;
          s.subtest = Subtest::Axis;
          s.line_role = r;
          s.index = i;
          s.u = u;
          s.axis = axis_line_through(u, i);
          s.t = u[i];
          s.mass = mass;
          fn(s);
        }
      }
  }
  if (P.weights[1] != 0) {
    Rational mass = P.weights[1] / Rational(M);
    for (std::uint64_t ui = 0; ui < M; ++ui) {
      RoundSample s;
      s.subtest = Subtest::SelfCons;
      s.u = point_from_index(F, P.m, ui);
      s.mass = mass;
      fn(s);
    }
  }
  if (P.weights[2] != 0) {
    for (Role r : {Role::A, Role::B})
      for (std::uint64_t ui = 0; ui < M; ++ui) {
        Point u = point_from_index(F, P.m, ui);
        for (int i = 1; i <= P.m; ++i) {
          std::uint64_t nv = ipow(F.q(), i);
          Rational mass = P.weights[2] / Rational(2 * M * P.m * nv);
          for (std::uint64_t vi = 0; vi < nv; ++vi) fn(diag_sample(P, r, i, u, diag_direction(F, P.m, i, vi), mass));
        }
      }
  }
}

std::vector<RoundSample> enumerate_rounds(const TestParams& P) {
  std::vector<RoundSample> out;
  for_each_round(P, [&](const RoundSample& s) { out.push_back(s); });
  return out;
}

void for_each_restricted_diag(const TestParams& P, int j, const RoundVisitor& fn) {
  P.validate();
  if (j < 1 || j > P.m) throw DomainError("protocol: restricted diagonal index out of range");
  const Field& F = P.F;
  std::uint64_t M = space_size(F, P.m), nv = ipow(F.q(), j);
  if (2.0 * static_cast<double>(M) * static_cast<double>(nv) > 1e6)
    throw GuardExceeded("protocol: question support exceeds 1e6");
  Rational mass = Rational(1) / Rational(2 * M * nv);
  for (Role r : {Role::A, Role::B})
    for (std::uint64_t ui = 0; ui < M; ++ui) {
      Point u = point_from_index(F, P.m, ui);
      for (std::uint64_t vi = 0; vi < nv; ++vi) fn(diag_sample(P, r, j, u, diag_direction(F, P.m, j, vi), mass));
    }
}

std::vector<RoundSample> restricted_diag_distribution(const TestParams& P, int j) {
  std::vector<RoundSample> out;
  for_each_restricted_diag(P, j, [&](const RoundSample& s) { out.push_back(s); });
  return out;
}

RoundSample sample_round(const TestParams& P, std::mt19937_64& rng) {
  P.validate();
  const Field& F = P.F;
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i) w[i] = static_cast<double>(P.weights[i]);
  std::discrete_distribution<int> pick(w.begin(), w.end());
  std::uniform_int_distribution<std::uint64_t> upt(0, space_size(F, P.m) - 1);
  std::uniform_int_distribution<int> coin(0, 1), axis(0, P.m - 1), diag(1, P.m);
  Subtest st = static_cast<Subtest>(pick(rng));
  Point u = point_from_index(F, P.m, upt(rng));
  RoundSample s;
  s.subtest = st;
  s.u = u;
  if (st == Subtest::SelfCons) return s;
  Role r = coin(rng) ? Role::B : Role::A;
  if (st == Subtest::Axis) {
    int i = axis(rng);
    s.line_role = r;
    s.index = i;
    s.axis = axis_line_through(u, i);
    s.t = u[i];
    return s;
  }
  int i = diag(rng);
  std::uniform_int_distribution<std::uint64_t> dv(0, ipow(F.q(), i) - 1);
  return diag_sample(P, r, i, u, diag_direction(F, P.m, i, dv(rng)), Rational(0));
}

bool verdict(const Field& F, const RoundSample& s, const Answer& a_answer, const Answer& b_answer) {
  if (s.subtest == Subtest::SelfCons) {
    const auto* a = std::get_if<FieldElement>(&a_answer);
    const auto* b = std::get_if<FieldElement>(&b_answer);
    if (!a || !b) throw DomainError("verdict: self-consistency answers must be field values");
    return *a == *b;
  }
  const Answer& line_ans = s.line_role == Role::A ? a_answer : b_answer;
  const Answer& pt_ans = s.line_role == Role::A ? b_answer : a_answer;
  const auto* a = std::get_if<FieldElement>(&pt_ans);
  if (!a) throw DomainError("verdict: point answer must be a field value");
  if (s.subtest == Subtest::Diag && s.diag->degenerate()) {
    // Degenerate line: the answer collapses to a single value.
    if (const auto* v = std::get_if<FieldElement>(&line_ans)) return *v == *a;
  }
  const auto* f = std::get_if<UniPoly>(&line_ans);
  if (!f) throw DomainError("verdict: line answer must be a polynomial");
  return evaluate(F, *f, s.t) == *a;
}

}  // namespace lidtest
