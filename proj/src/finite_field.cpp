#include "lidtest/finite_field.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace lidtest {

namespace {

using Poly = std::vector<int>;  // coefficients mod p, low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  int lead_inv = 1;
  for (int c = 1; c < p; ++c)
    if ((m.back() * c) % p == 1) lead_inv = c;
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    int shift = static_cast<int>(a.size()) - 1 - dm;
    int f = (a.back() * lead_inv) % p;
    for (int i = 0; i <= dm; ++i) {
      a[shift + i] = ((a[shift + i] - f * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(r, m, p);
}

std::uint32_t pack(const Poly& a, int p) {
  std::uint32_t v = 0, base = 1;
  for (int c : a) {
    v += static_cast<std::uint32_t>(c) * base;
    base *= static_cast<std::uint32_t>(p);
  }
  return v;
}

Poly unpack(std::uint32_t v, int p, int t) {
  Poly a(t, 0);
  for (int i = 0; i < t; ++i) {
    a[i] = static_cast<int>(v % static_cast<std::uint32_t>(p));
    v /= static_cast<std::uint32_t>(p);
  }
  return a;
}

std::uint32_t field_tag(const FieldParams& fp) {
  std::uint32_t h = 2166136261u;
  auto mix = [&h](std::uint32_t x) {
    h ^= x;
    h *= 16777619u;
  };
  mix(static_cast<std::uint32_t>(fp.p));
  mix(static_cast<std::uint32_t>(fp.t));
  for (int c : fp.modulus) mix(static_cast<std::uint32_t>(c));
  return h == 0 ? 1 : h;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> f;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

const std::map<std::pair<int, int>, Poly>& conway_table() {
  static const std::map<std::pair<int, int>, Poly> table = {
      {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},    {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}}, {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},       {{5, 2}, {2, 4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  return table;
}

}  // namespace

int FieldParams::q() const {
  int q = 1;
  for (int i = 0; i < t; ++i) q *= p;
  return q;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  Poly f = poly;
  for (int& c : f) c = ((c % p) + p) % p;
  trim(f);
  int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  for (int dd = 1; dd <= deg / 2; ++dd) {
    int count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      Poly g = unpack(static_cast<std::uint32_t>(idx), p, dd);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> default_modulus(int p, int t) {
  if (!is_prime(p) || t < 1) throw DomainError("field: p must be prime and t >= 1");
  if (t == 1) return {0, 1};
  auto it = conway_table().find({p, t});
  if (it != conway_table().end()) return it->second;
  int count = 1;
  for (int i = 0; i < t; ++i) count *= p;
  for (int idx = 0; idx < count; ++idx) {
    Poly g = unpack(static_cast<std::uint32_t>(idx), p, t);
    g.push_back(1);
    if (is_irreducible(p, g)) return g;
  }
  throw DomainError("field: no irreducible modulus found");
}

FieldParams params_for_order(int q) {
  for (int p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p != 0) continue;
    int t = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++t;
    }
    if (r != 1) break;
    return FieldParams{p, t, default_modulus(p, t)};
  }
  throw DomainError("field: q = " + std::to_string(q) + " is not a prime power");
}

struct Field::Impl {
  FieldParams fp;
  int q = 0;
  std::uint32_t tag = 0;
  std::vector<std::uint32_t> exp;  // exp[i] = g^i, length 2(q-1)
  std::vector<std::uint32_t> log;
  std::vector<std::uint16_t> add_table;  // only when q <= 256
  std::vector<std::uint32_t> trace;
  std::vector<std::uint32_t> powp;

  std::uint32_t add_slow(std::uint32_t x, std::uint32_t y) const {
    if (fp.t == 1) return (x + y) % static_cast<std::uint32_t>(q);
    std::uint32_t r = 0;
    for (int i = 0; i < fp.t; ++i) {
      std::uint32_t a = (x / powp[i]) % fp.p, b = (y / powp[i]) % fp.p;
      r += ((a + b) % fp.p) * powp[i];
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t x) const {
    std::uint32_t r = 0;
    for (int i = 0; i < fp.t; ++i) {
      std::uint32_t a = (x / powp[i]) % fp.p;
      r += ((fp.p - a) % fp.p) * powp[i];
    }
    return r;
  }
};

Field::Field(int p, int t) : Field(FieldParams{p, t, {}}) {}

Field::Field(const FieldParams& params_in) {
  FieldParams fp = params_in;
  if (!is_prime(fp.p)) throw DomainError("field: p = " + std::to_string(fp.p) + " is not prime");
  if (fp.t < 1) throw DomainError("field: t must be >= 1");
  double qd = std::pow(static_cast<double>(fp.p), fp.t);
  if (qd > 65536.0) throw GuardExceeded("field: q must be <= 2^16");
  if (fp.modulus.empty()) fp.modulus = default_modulus(fp.p, fp.t);
  if (static_cast<int>(fp.modulus.size()) != fp.t + 1 || fp.modulus.back() % fp.p != 1)
    throw DomainError("field: modulus must be monic of degree t");
  for (int& c : fp.modulus) c = ((c % fp.p) + fp.p) % fp.p;
  if (!is_irreducible(fp.p, fp.modulus)) throw DomainError("field: modulus is reducible");

  auto impl = std::make_shared<Impl>();
  impl->fp = fp;
  impl->q = fp.q();
  impl->tag = field_tag(fp);
  impl->powp.resize(fp.t + 1);
  impl->powp[0] = 1;
  for (int i = 1; i <= fp.t; ++i) impl->powp[i] = impl->powp[i - 1] * fp.p;

  const int q = impl->q;
  const std::uint32_t n = static_cast<std::uint32_t>(q - 1);
  auto factors = prime_factors(q - 1);
  auto power = [&](const Poly& g, std::uint64_t e) {
    Poly r{1}, b = g;
    while (e) {
      if (e & 1) r = poly_mulmod(r, b, fp.modulus, fp.p);
      b = poly_mulmod(b, b, fp.modulus, fp.p);
      e >>= 1;
    }
    return r;
  };
  Poly gen;
  for (int v = 1; v < q; ++v) {
    Poly g = unpack(static_cast<std::uint32_t>(v), fp.p, fp.t);
    trim(g);
    bool primitive = true;
    for (int r : factors) {
      Poly x = power(g, static_cast<std::uint64_t>((q - 1) / r));
      if (x == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  impl->exp.assign(2 * n, 0);
  impl->log.assign(q, 0);
  Poly cur{1};
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t v = pack(cur, fp.p);
    impl->exp[i] = v;
    impl->log[v] = i;
    cur = poly_mulmod(cur, gen, fp.modulus, fp.p);
  }
  for (std::uint32_t i = n; i < 2 * n; ++i) impl->exp[i] = impl->exp[i - n];

  if (q <= 256) {
    impl->add_table.resize(static_cast<std::size_t>(q) * q);
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        impl->add_table[static_cast<std::size_t>(x) * q + y] =
            static_cast<std::uint16_t>(impl->add_slow(x, y));
  }
  impl_ = impl;

  std::vector<std::uint32_t> tr(q);
  for (int v = 0; v < q; ++v) {
    FieldElement x = elem(static_cast<std::uint32_t>(v)), acc = zero(), xp = x;
    for (int l = 0; l < fp.t; ++l) {
      acc = add(acc, xp);
      xp = pow(xp, static_cast<std::uint64_t>(fp.p));
    }
    tr[v] = acc.value;
  }
  impl->trace = std::move(tr);
}

const FieldParams& Field::params() const { return impl_->fp; }
int Field::p() const { return impl_->fp.p; }
int Field::t() const { return impl_->fp.t; }
int Field::q() const { return impl_->q; }
std::uint32_t Field::tag() const { return impl_ ? impl_->tag : 0; }

void Field::check(FieldElement x) const {
  if (x.tag != impl_->tag || x.value >= static_cast<std::uint32_t>(impl_->q))
    throw DomainError("field: element does not belong to this field");
}

FieldElement Field::elem(std::uint32_t value) const {
  if (value >= static_cast<std::uint32_t>(impl_->q)) throw DomainError("field: value out of range");
  return FieldElement{value, impl_->tag};
}

FieldElement Field::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) > t()) throw DomainError("field: too many coefficients");
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] >= p()) throw DomainError("field: coefficient out of range");
    v += static_cast<std::uint32_t>(c[i]) * impl_->powp[i];
  }
  return elem(v);
}

std::vector<int> Field::coeffs(FieldElement x) const {
  check(x);
  return unpack(x.value, p(), t());
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q());
  for (int v = 0; v < q(); ++v) out.push_back(elem(static_cast<std::uint32_t>(v)));
  return out;
}

FieldElement Field::add(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  if (!impl_->add_table.empty())
    return {impl_->add_table[static_cast<std::size_t>(x.value) * impl_->q + y.value], impl_->tag};
  return {impl_->add_slow(x.value, y.value), impl_->tag};
}

FieldElement Field::neg(FieldElement x) const {
  check(x);
  return {impl_->neg(x.value), impl_->tag};
}

FieldElement Field::sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

FieldElement Field::mul(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  if (x.value == 0 || y.value == 0) return zero();
  return {impl_->exp[impl_->log[x.value] + impl_->log[y.value]], impl_->tag};
}

FieldElement Field::inv(FieldElement x) const {
  check(x);
  if (x.value == 0) throw DomainError("field: inversion of zero");
  std::uint32_t n = static_cast<std::uint32_t>(impl_->q - 1);
  return {impl_->exp[(n - impl_->log[x.value]) % n], impl_->tag};
}

FieldElement Field::div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }

FieldElement Field::pow(FieldElement x, std::uint64_t e) const {
  check(x);
  if (e == 0) return one();
  if (x.value == 0) return zero();
  std::uint64_t n = static_cast<std::uint64_t>(impl_->q - 1);
  std::uint64_t k = (static_cast<std::uint64_t>(impl_->log[x.value]) * (e % n)) % n;
  return {impl_->exp[k], impl_->tag};
}

FieldElement Field::trace(FieldElement x) const {
  check(x);
  return {impl_->trace[x.value], impl_->tag};
}

std::complex<double> Field::omega() const {
  return std::polar(1.0, 2.0 * std::numbers::pi / p());
}

std::complex<double> Field::character(FieldElement x) const {
  // tr(x) lies in the prime subfield, so its packed value is the residue itself.
  double k = static_cast<double>(trace(x).value);
  return std::polar(1.0, 2.0 * std::numbers::pi * k / p());
}

std::complex<double> Field::character_sum(FieldElement a) const {
  std::complex<double> s = 0;
  for (int v = 0; v < q(); ++v) s += character(mul(elem(static_cast<std::uint32_t>(v)), a));
  return s / static_cast<double>(q());
}

std::complex<double> Field::vector_character_sum(const std::vector<FieldElement>& v) const {
  // The sum factorizes over coordinates.
  std::complex<double> s = 1;
  for (const auto& c : v) s *= character_sum(c);
  return s;
}

}  // namespace lidtest
