#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace lidtest {

// Thrown for precondition violations that the spec lists as errors.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an instance exceeds an enumeration or dimension guard.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldParams {
  int p = 2;
  int t = 1;
  std::vector<int> modulus;  // low to high, length t+1, monic

  int q() const;
};

/// Element of F_{p^t}. `value` packs the polynomial-basis coefficients
/// as sum_i c_i p^i; `tag` identifies the field it belongs to.
struct FieldElement {
  std::uint32_t value = 0;
  std::uint32_t tag = 0;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value == b.value && a.tag == b.tag;
  }
  friend auto operator<=>(const FieldElement& a, const FieldElement& b) {
    return a.value <=> b.value;
  }
};

/// Immutable handle to F_q, cheap to copy and safe to share across threads.
class Field {
 public:
  Field() = default;
  Field(int p, int t);
  explicit Field(const FieldParams& params);

  const FieldParams& params() const;
  int p() const;
  int t() const;
  int q() const;
  std::uint32_t tag() const;

  FieldElement zero() const { return elem(0); }
  FieldElement one() const { return elem(1); }
  FieldElement elem(std::uint32_t value) const;
  FieldElement from_coeffs(const std::vector<int>& coeffs) const;
  std::vector<int> coeffs(FieldElement x) const;
  std::vector<FieldElement> elements() const;

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement sub(FieldElement x, FieldElement y) const;
  FieldElement neg(FieldElement x) const;
  FieldElement mul(FieldElement x, FieldElement y) const;
  FieldElement inv(FieldElement x) const;
  FieldElement div(FieldElement x, FieldElement y) const;
  FieldElement pow(FieldElement x, std::uint64_t e) const;

  /// tr(x) = sum_{l<t} x^{p^l}, an element of the prime subfield.
  FieldElement trace(FieldElement x) const;
  /// omega^{tr(x)} with omega = exp(2 pi i / p).
  std::complex<double> character(FieldElement x) const;
  std::complex<double> omega() const;
  /// E_x omega^{tr(x a)}.
  std::complex<double> character_sum(FieldElement a) const;
  /// E_u omega^{tr(u . v)} over u in F_q^m, m = v.size().
  std::complex<double> vector_character_sum(const std::vector<FieldElement>& v) const;

  friend bool operator==(const Field& a, const Field& b) { return a.tag() == b.tag(); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  void check(FieldElement x) const;
};

/// Built-in modulus for p^t <= 64 (Conway polynomials; x for t = 1).
/// Larger fields fall back to the lexicographically first monic irreducible.
std::vector<int> default_modulus(int p, int t);
bool is_prime(int n);
bool is_irreducible(int p, const std::vector<int>& poly);
/// Resolves q = p^t; throws DomainError when q is not a prime power.
FieldParams params_for_order(int q);

}  // namespace lidtest
