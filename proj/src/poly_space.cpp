#include "lidtest/poly_space.hpp"

#include <cmath>
#include <string>

namespace lidtest {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::size_t monomial_count(int m, int d) { return static_cast<std::size_t>(ipow(d + 1, m)); }

void check_dims(const MultiPoly& g) {
  if (g.coeffs.size() != monomial_count(g.m, g.d)) throw DomainError("poly: coefficient array has wrong length");
}

UniPoly mul(const Field& F, const UniPoly& a, const UniPoly& b, int bound) {
  UniPoly r = zero_unipoly(F, bound);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].value == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size() && i + j <= static_cast<std::size_t>(bound); ++j)
      r.coeffs[i + j] = F.add(r.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
  }
  return r;
}

}  // namespace

bool DiagonalLine::degenerate() const {
  for (const auto& c : dir.coords)
    if (c.value != 0) return false;
  return true;
}

std::uint64_t space_size(const Field& F, int m) { return ipow(static_cast<std::uint64_t>(F.q()), m); }

std::uint64_t point_index(const Field& F, const Point& u) {
  std::uint64_t idx = 0;
  for (const auto& c : u.coords) idx = idx * F.q() + c.value;
  return idx;
}

Point point_from_index(const Field& F, int m, std::uint64_t idx) {
  Point u;
  u.coords.resize(m);
  for (int j = m - 1; j >= 0; --j) {
    u.coords[j] = F.elem(static_cast<std::uint32_t>(idx % F.q()));
    idx /= F.q();
  }
  return u;
}

Point zero_point(const Field& F, int m) { return Point{std::vector<FieldElement>(m, F.zero())}; }

std::size_t monomial_index(int m, int d, const std::vector<int>& exps) {
  if (static_cast<int>(exps.size()) != m) throw DomainError("poly: exponent tuple has wrong length");
  std::size_t idx = 0;
  for (int e : exps) {
    if (e < 0 || e > d) throw DomainError("poly: exponent " + std::to_string(e) + " exceeds individual degree");
    idx = idx * (d + 1) + e;
  }
  return idx;
}

std::vector<int> monomial_exponents(int m, int d, std::size_t idx) {
  std::vector<int> e(m);
  for (int j = m - 1; j >= 0; --j) {
    e[j] = static_cast<int>(idx % (d + 1));
    idx /= (d + 1);
  }
  return e;
}

MultiPoly zero_poly(const Field& F, int m, int d) {
  if (m < 0 || d < 0) throw DomainError("poly: m and d must be nonnegative");
  return MultiPoly{m, d, std::vector<FieldElement>(monomial_count(m, d), F.zero())};
}

MultiPoly make_poly(const Field& F, int m, int d,
                    const std::vector<std::pair<std::vector<int>, FieldElement>>& terms) {
  MultiPoly g = zero_poly(F, m, d);
  for (const auto& [exps, c] : terms) {
    std::size_t i = monomial_index(m, d, exps);
    g.coeffs[i] = F.add(g.coeffs[i], c);
  }
  return g;
}

FieldElement evaluate(const Field& F, const MultiPoly& g, const Point& u) {
  check_dims(g);
  if (static_cast<int>(u.size()) != g.m) throw DomainError("poly: point dimension mismatch");
  // Horner over the row-major layout: the last variable is innermost.
  std::size_t n = g.coeffs.size();
  std::vector<FieldElement> acc(g.coeffs);
  for (int j = g.m - 1; j >= 0; --j) {
    std::size_t outer = n / (g.d + 1);
    std::vector<FieldElement> next(outer, F.zero());
    for (std::size_t o = 0; o < outer; ++o) {
      FieldElement h = F.zero();
      for (int e = g.d; e >= 0; --e) h = F.add(F.mul(h, u[j]), acc[o * (g.d + 1) + e]);
      next[o] = h;
    }
    acc.swap(next);
    n = outer;
  }
  return acc.empty() ? F.zero() : acc[0];
}

FieldElement evaluate(const Field& F, const UniPoly& f, FieldElement t) {
  FieldElement h = F.zero();
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) h = F.add(F.mul(h, t), *it);
  return h;
}

UniPoly zero_unipoly(const Field& F, int bound) {
  return UniPoly{std::vector<FieldElement>(static_cast<std::size_t>(bound + 1), F.zero())};
}

UniPoly trimmed(const UniPoly& f) {
  UniPoly r = f;
  while (r.coeffs.size() > 1 && r.coeffs.back().value == 0) r.coeffs.pop_back();
  return r;
}

int degree(const UniPoly& f) {
  for (int i = f.bound(); i >= 0; --i)
    if (f.coeffs[i].value != 0) return i;
  return -1;
}

AxisLine axis_line_through(const Point& u, int axis) {
  if (axis < 0 || axis >= static_cast<int>(u.size())) throw DomainError("line: axis out of range");
  AxisLine l{axis, u};
  l.base[axis] = FieldElement{0, u[axis].tag};
  return l;
}

FieldElement axis_parameter(const AxisLine& l, const Point& u) {
  for (std::size_t j = 0; j < u.size(); ++j)
    if (static_cast<int>(j) != l.axis && !(u[j] == l.base[j])) throw DomainError("line: point not on axis line");
  return u[l.axis];
}

Point axis_point(const Field&, const AxisLine& l, FieldElement t) {
  Point u = l.base;
  u[l.axis] = t;
  return u;
}

DiagonalLine canonical_line(const Field& F, const Point& u, const Point& v) {
  if (u.size() != v.size()) throw DomainError("line: dimension mismatch");
  DiagonalLine l{u, v, 0};
  int first = -1;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].value != 0) {
      if (first < 0) first = static_cast<int>(j);
      l.tail = static_cast<int>(j) + 1;
    }
  }
  if (first < 0) return l;
  FieldElement s = F.inv(v[first]);
  for (auto& c : l.dir.coords) c = F.mul(c, s);
  FieldElement t0 = u[first];
  for (std::size_t j = 0; j < u.size(); ++j) l.base[j] = F.sub(u[j], F.mul(t0, l.dir[j]));
  return l;
}

FieldElement line_parameter(const Field& F, const DiagonalLine& l, const Point& u) {
  if (l.degenerate()) {
    if (!(u == l.base)) throw DomainError("line: point not on degenerate line");
    return F.zero();
  }
  int first = 0;
  while (l.dir[first].value == 0) ++first;
  FieldElement t = u[first];
  if (!(line_point(F, l, t) == u)) throw DomainError("line: point not on line");
  return t;
}

Point line_point(const Field& F, const DiagonalLine& l, FieldElement t) {
  Point u = l.base;
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = F.add(l.base[j], F.mul(t, l.dir[j]));
  return u;
}

std::uint64_t axis_key(const Field& F, const AxisLine& l) {
  return static_cast<std::uint64_t>(l.axis) * space_size(F, static_cast<int>(l.base.size())) + point_index(F, l.base);
}

std::uint64_t diag_key(const Field& F, const DiagonalLine& l) {
  return point_index(F, l.base) * space_size(F, static_cast<int>(l.base.size())) + point_index(F, l.dir);
}

AxisLine axis_from_key(const Field& F, int m, std::uint64_t key) {
  std::uint64_t n = space_size(F, m);
  return AxisLine{static_cast<int>(key / n), point_from_index(F, m, key % n)};
}

DiagonalLine diag_from_key(const Field& F, int m, std::uint64_t key) {
  std::uint64_t n = space_size(F, m);
  return canonical_line(F, point_from_index(F, m, key / n), point_from_index(F, m, key % n));
}

UniPoly restrict_axis(const Field& F, const MultiPoly& g, const AxisLine& l) {
  check_dims(g);
  if (static_cast<int>(l.base.size()) != g.m) throw DomainError("restrict: dimension mismatch");
  UniPoly f = zero_unipoly(F, g.d);
  std::vector<std::vector<FieldElement>> pw(g.m, std::vector<FieldElement>(g.d + 1));
  for (int j = 0; j < g.m; ++j) {
    pw[j][0] = F.one();
    for (int e = 1; e <= g.d; ++e) pw[j][e] = F.mul(pw[j][e - 1], l.base[j]);
  }
  for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
    if (g.coeffs[i].value == 0) continue;
    auto e = monomial_exponents(g.m, g.d, i);
    FieldElement c = g.coeffs[i];
    for (int j = 0; j < g.m; ++j)
      if (j != l.axis) c = F.mul(c, pw[j][e[j]]);
    f.coeffs[e[l.axis]] = F.add(f.coeffs[e[l.axis]], c);
  }
  return f;
}

UniPoly restrict_diagonal(const Field& F, const MultiPoly& g, const DiagonalLine& l) {
  check_dims(g);
  if (static_cast<int>(l.base.size()) != g.m) throw DomainError("restrict: dimension mismatch");
  int bound = g.m * g.d;
  if (l.degenerate()) {
    UniPoly f = zero_unipoly(F, bound);
    f.coeffs[0] = evaluate(F, g, l.base);
    return f;
  }
  // pw[j][e] = (base_j + t dir_j)^e
  std::vector<std::vector<UniPoly>> pw(g.m);
  for (int j = 0; j < g.m; ++j) {
    UniPoly lin = zero_unipoly(F, 1);
    lin.coeffs[0] = l.base[j];
    lin.coeffs[1] = l.dir[j];
    pw[j].push_back(UniPoly{{F.one()}});
    for (int e = 1; e <= g.d; ++e) pw[j].push_back(mul(F, pw[j][e - 1], lin, e));
  }
  UniPoly f = zero_unipoly(F, bound);
  for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
    if (g.coeffs[i].value == 0) continue;
    auto e = monomial_exponents(g.m, g.d, i);
    UniPoly term{{g.coeffs[i]}};
    for (int j = 0; j < g.m; ++j) term = mul(F, term, pw[j][e[j]], bound);
    for (std::size_t k = 0; k < term.coeffs.size(); ++k) f.coeffs[k] = F.add(f.coeffs[k], term.coeffs[k]);
  }
  return f;
}

MultiPoly restrict_last(const Field& F, const MultiPoly& h, FieldElement x) {
  check_dims(h);
  if (h.m < 1) throw DomainError("restrict: need at least one variable");
  MultiPoly g = zero_poly(F, h.m - 1, h.d);
  std::vector<FieldElement> pw(h.d + 1);
  pw[0] = F.one();
  for (int e = 1; e <= h.d; ++e) pw[e] = F.mul(pw[e - 1], x);
  for (std::size_t o = 0; o < g.coeffs.size(); ++o) {
    FieldElement s = F.zero();
    for (int e = 0; e <= h.d; ++e) s = F.add(s, F.mul(h.coeffs[o * (h.d + 1) + e], pw[e]));
    g.coeffs[o] = s;
  }
  return g;
}

MultiPoly interpolate_parallel(const Field& F, const std::vector<std::pair<FieldElement, MultiPoly>>& slices,
                               int d) {
  if (static_cast<int>(slices.size()) != d + 1) throw DomainError("interpolate: need exactly d+1 slices");
  for (std::size_t a = 0; a < slices.size(); ++a)
    for (std::size_t b = a + 1; b < slices.size(); ++b)
      if (slices[a].first == slices[b].first) throw DomainError("interpolate: duplicate nodes");
  int m = slices[0].second.m;
  for (const auto& s : slices) {
    check_dims(s.second);
    if (s.second.m != m || s.second.d != d) throw DomainError("interpolate: slice shape mismatch");
  }
  // Lagrange basis polynomials in z.
  std::vector<UniPoly> basis;
  for (std::size_t j = 0; j < slices.size(); ++j) {
    UniPoly num{{F.one()}};
    FieldElement den = F.one();
    for (std::size_t i = 0; i < slices.size(); ++i) {
      if (i == j) continue;
      UniPoly lin{{F.neg(slices[i].first), F.one()}};
      num = mul(F, num, lin, d);
      den = F.mul(den, F.sub(slices[j].first, slices[i].first));
    }
    FieldElement s = F.inv(den);
    for (auto& c : num.coeffs) c = F.mul(c, s);
    num.coeffs.resize(d + 1, F.zero());
    basis.push_back(num);
  }
  MultiPoly h = zero_poly(F, m + 1, d);
  for (std::size_t o = 0; o < monomial_count(m, d); ++o) {
    for (int k = 0; k <= d; ++k) {
      FieldElement s = F.zero();
      for (std::size_t j = 0; j < slices.size(); ++j)
        s = F.add(s, F.mul(slices[j].second.coeffs[o], basis[j].coeffs[k]));
      h.coeffs[o * (d + 1) + k] = s;
    }
  }
  return h;
}

std::vector<FieldElement> evaluation_table(const Field& F, const MultiPoly& g) {
  std::uint64_t n = space_size(F, g.m);
  std::vector<FieldElement> out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = evaluate(F, g, point_from_index(F, g.m, i));
  return out;
}

Rational agreement_fraction(const Field& F, const MultiPoly& g, const MultiPoly& h) {
  if (g.m != h.m || g.d != h.d) throw DomainError("agreement: shape mismatch");
  std::uint64_t n = space_size(F, g.m);
  if (n > 100000) throw GuardExceeded("agreement: q^m exceeds 1e5");
  std::uint64_t agree = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Point u = point_from_index(F, g.m, i);
    if (evaluate(F, g, u) == evaluate(F, h, u)) ++agree;
  }
  return Rational(agree) / Rational(n);
}

std::uint64_t polyspace_size(const Field& F, int m, int d) {
  double digits = static_cast<double>(monomial_count(m, d));
  if (digits * std::log10(static_cast<double>(F.q())) > 6.0 + 1e-12)
    throw GuardExceeded("polyspace: |P(m,q,d)| exceeds 1e6");
  return ipow(static_cast<std::uint64_t>(F.q()), static_cast<int>(monomial_count(m, d)));
}

MultiPoly poly_from_index(const Field& F, int m, int d, std::uint64_t idx) {
  MultiPoly g = zero_poly(F, m, d);
  for (auto& c : g.coeffs) {
    c = F.elem(static_cast<std::uint32_t>(idx % F.q()));
    idx /= F.q();
  }
  return g;
}

std::uint64_t poly_index(const MultiPoly& g, int q) {
  std::uint64_t idx = 0;
  for (auto it = g.coeffs.rbegin(); it != g.coeffs.rend(); ++it) idx = idx * q + it->value;
  return idx;
}

std::vector<MultiPoly> enumerate_polyspace(const Field& F, int m, int d) {
  std::vector<MultiPoly> out;
  std::uint64_t n = polyspace_size(F, m, d);
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(poly_from_index(F, m, d, i));
  return out;
}

void for_each_poly(const Field& F, int m, int d, const std::function<void(std::uint64_t, const MultiPoly&)>& fn) {
  std::uint64_t n = polyspace_size(F, m, d);
  for (std::uint64_t i = 0; i < n; ++i) fn(i, poly_from_index(F, m, d, i));
}

std::uint64_t unipoly_count(int q, int bound) {
  if ((bound + 1) * std::log10(static_cast<double>(q)) > 6.0 + 1e-12)
    throw GuardExceeded("answers: q^(bound+1) exceeds 1e6");
  return ipow(static_cast<std::uint64_t>(q), bound + 1);
}

std::uint64_t unipoly_index(const UniPoly& f, int q) {
  std::uint64_t idx = 0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) idx = idx * q + it->value;
  return idx;
}

UniPoly unipoly_from_index(const Field& F, int bound, std::uint64_t idx) {
  UniPoly f = zero_unipoly(F, bound);
  for (auto& c : f.coeffs) {
    c = F.elem(static_cast<std::uint32_t>(idx % F.q()));
    idx /= F.q();
  }
  return f;
}

}  // namespace lidtest
