#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <vector>

#include "lidtest/finite_field.hpp"

namespace lidtest {

using Rational = boost::multiprecision::cpp_rational;

struct Point {
  std::vector<FieldElement> coords;

  std::size_t size() const { return coords.size(); }
  const FieldElement& operator[](std::size_t i) const { return coords[i]; }
  FieldElement& operator[](std::size_t i) { return coords[i]; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// Individual degree <= d polynomial on F_q^m. Coefficients are stored
/// row-major over exponent tuples (i_1, ..., i_m), i_1 most significant.
struct MultiPoly {
  int m = 0;
  int d = 0;
  std::vector<FieldElement> coeffs;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;
};

/// Univariate polynomial in the canonical line parameter, low to high.
struct UniPoly {
  std::vector<FieldElement> coeffs;

  int bound() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

/// Axis-parallel line {base + t e_axis}. Canonical: base[axis] = 0, so the
/// parameter of a point u on the line is u[axis]. `axis` is 0-based.
struct AxisLine {
  int axis = 0;
  Point base;
  friend bool operator==(const AxisLine&, const AxisLine&) = default;
};

/// Line {base + t dir}. When dir != 0 the first nonzero coordinate j of dir
/// is 1 and base[j] = 0; dir == 0 is the degenerate one-point line.
/// `tail` is the least i such that the last m - i coordinates of dir vanish.
struct DiagonalLine {
  Point base;
  Point dir;
  int tail = 0;

  bool degenerate() const;
  friend bool operator==(const DiagonalLine&, const DiagonalLine&) = default;
};

// Points of F_q^m are indexed by their coordinates in base q, first
// coordinate most significant.
std::uint64_t point_index(const Field& F, const Point& u);
Point point_from_index(const Field& F, int m, std::uint64_t idx);
std::uint64_t space_size(const Field& F, int m);
Point zero_point(const Field& F, int m);

FieldElement evaluate(const Field& F, const MultiPoly& g, const Point& u);
FieldElement evaluate(const Field& F, const UniPoly& f, FieldElement t);

MultiPoly zero_poly(const Field& F, int m, int d);
/// Builds a polynomial from (exponent tuple, coefficient) terms; an exponent
/// above d is rejected.
MultiPoly make_poly(const Field& F, int m, int d,
                    const std::vector<std::pair<std::vector<int>, FieldElement>>& terms);
std::size_t monomial_index(int m, int d, const std::vector<int>& exps);
std::vector<int> monomial_exponents(int m, int d, std::size_t idx);

UniPoly zero_unipoly(const Field& F, int bound);
/// Drops high zero coefficients (keeps at least the constant term).
UniPoly trimmed(const UniPoly& f);
int degree(const UniPoly& f);  // -1 for the zero polynomial

AxisLine axis_line_through(const Point& u, int axis);
FieldElement axis_parameter(const AxisLine& l, const Point& u);
Point axis_point(const Field& F, const AxisLine& l, FieldElement t);

DiagonalLine canonical_line(const Field& F, const Point& u, const Point& v);
FieldElement line_parameter(const Field& F, const DiagonalLine& l, const Point& u);
Point line_point(const Field& F, const DiagonalLine& l, FieldElement t);

std::uint64_t axis_key(const Field& F, const AxisLine& l);
std::uint64_t diag_key(const Field& F, const DiagonalLine& l);
AxisLine axis_from_key(const Field& F, int m, std::uint64_t key);
DiagonalLine diag_from_key(const Field& F, int m, std::uint64_t key);

/// f(t) = g(base + t e_axis); bound d.
UniPoly restrict_axis(const Field& F, const MultiPoly& g, const AxisLine& l);
/// f(t) = g(base + t dir); bound m d.
UniPoly restrict_diagonal(const Field& F, const MultiPoly& g, const DiagonalLine& l);
/// Restriction to the hyperplane x_{m} = x, giving a polynomial in the first m-1 variables.
MultiPoly restrict_last(const Field& F, const MultiPoly& h, FieldElement x);

/// Unique h in P(m+1,q,d) with h(., x_j) = g_j for the d+1 slices.
MultiPoly interpolate_parallel(const Field& F, const std::vector<std::pair<FieldElement, MultiPoly>>& slices,
                               int d);

/// Exact fraction of points where g and h agree (q^m <= 1e5).
Rational agreement_fraction(const Field& F, const MultiPoly& g, const MultiPoly& h);

std::uint64_t polyspace_size(const Field& F, int m, int d);  // throws GuardExceeded above 1e6
MultiPoly poly_from_index(const Field& F, int m, int d, std::uint64_t idx);
std::uint64_t poly_index(const MultiPoly& g, int q);
std::vector<MultiPoly> enumerate_polyspace(const Field& F, int m, int d);
void for_each_poly(const Field& F, int m, int d, const std::function<void(std::uint64_t, const MultiPoly&)>& fn);

/// Outcome label of a univariate answer with the given coefficient bound.
std::uint64_t unipoly_index(const UniPoly& f, int q);
UniPoly unipoly_from_index(const Field& F, int bound, std::uint64_t idx);
std::uint64_t unipoly_count(int q, int bound);  // throws GuardExceeded above 1e6

/// Values g(u) for every point, indexed by point_index.
std::vector<FieldElement> evaluation_table(const Field& F, const MultiPoly& g);

}  // namespace lidtest
