#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lidtest/poly_space.hpp"
#include "lidtest/strategies.hpp"

namespace lidtest {

/// Slice measurements G^x over P(m,q,d), one per x in F_q (indexed by x.value).
struct PastingParams {
  int k = 0;
  bool distinct = true;             // average over Distinct_k, else over F_q^k
  std::uint64_t samples = 4096;     // used when the tuple set exceeds 1e5
  std::uint64_t seed = 0;
};

/// Ordered k-tuples of pairwise distinct field elements.
std::vector<std::vector<FieldElement>> distinct_tuples(const Field& F, int k);

struct TvCheck {
  Rational exact;            // d_TV(uniform F_q^k, Distinct_k)
  Rational collision_bound;  // k(k-1)/(2q)
  Rational square_bound;     // k^2/q
};
TvCheck tv_distance_bound_check(int q, int k);

/// Completion of each slice with the bottom outcome appended last.
std::vector<SubMeasurement> complete_slices(const std::vector<SubMeasurement>& G, double tol = 1e-8);

/// G^{x_1}_{g_1} ... G^{x_k}_{g_k} ... G^{x_1}_{g_1}; labels index the completed slices.
Mat sandwich(const std::vector<SubMeasurement>& Ghat, const std::vector<FieldElement>& xs,
             const std::vector<std::size_t>& gs);
/// Sum of sandwiches over every outcome tuple, by enumeration (zero operators pruned).
Mat sandwich_total(const std::vector<SubMeasurement>& Ghat, const std::vector<FieldElement>& xs);

/// The polynomial interpolating the non-bottom entries if there are at least d+1
/// of them and all agree with it.
std::optional<MultiPoly> interpolate_tuple(const Field& F, int d, const std::vector<FieldElement>& xs,
                                           const std::vector<std::optional<MultiPoly>>& gs);

struct PastedMeasurement {
  SubMeasurement H;       // over P(m+1,q,d), by poly_index
  SubMeasurement H_meas;  // I - sum H added to the zero polynomial
  std::uint64_t tuples = 0;
  bool exact = true;      // false when the coordinate tuples were sampled
  double excess = 0;      // lambda_max(sum H) - 1
};

PastedMeasurement pasted_measurement(const Field& F, int m, int d, const std::vector<SubMeasurement>& G,
                                     const PastingParams& p);

/// Sum_{r=d+1}^k binom(k,r) X^r (I-X)^{k-r} by eigendecomposition.
Mat binomial_matrix_F(const Mat& X, int k, int d);
double binomial_tail(double p, int k, int d);

struct ChernoffReport {
  double kappa = 0;      // 1 - <X (x) I>
  double measured = 0;   // <F(X) (x) I>
  double bound = 0;      // 1 - kappa/(1-theta) - exp(-theta^2 k / 2)
  double margin = 0;
  double commutator = 0; // ||[F(X), X]||
  double min_eig = 0;
  double max_eig = 0;
};
ChernoffReport chernoff_completeness_check(const Mat& X, const Mat& psi, int k, int d, double theta);

/// lambda (1 - lambda^d) <= 2 (lambda^{d+1} (1 - lambda))^{1/(d+1)}
bool scalar_ineq_check(double lambda, int d);

/// The three hypotheses shared by the commutativity and pasting theorems, with
/// Z^x the SDP dual optimum for {E_u A^{u,x}_{g(u)}}_g.
struct SliceHypotheses {
  double kappa = 0;        // 1 - E_x <G^x (x) I>
  double consistency = 0;  // A^{u,x}_a (x) I vs I (x) G^x_{[g(u)=a]}
  double self = 0;         // E_x sum_g ||(G^x_g (x) I - I (x) G^x_g) psi||^2
  double bounded = 0;      // E_x <(I - G^x) (x) Z^x>
  double zeta = 0;         // max of the three
  std::vector<Mat> Z;
};
SliceHypotheses slice_hypotheses(const QuantumStrategy& s, const std::vector<SubMeasurement>& G);

struct PastingReport {
  Goodness goodness;
  double kappa = 0;
  double zeta_consistency = 0;
  double zeta_self = 0;
  double zeta_bounded = 0;
  double zeta = 0;  // max of the three hypotheses
  double nu = 0;
  double sigma = 0;
  double consistency = 0;  // A^u_a (x) I vs I (x) H_{[h(u)=a]}, H completed
  double h_b = 0;          // H_{[h|u=f]} (x) I vs I (x) B^u_f
  double nu6 = 0;
  double over_all = 0;     // |<H (x) I> - E_x sum_{|tau| >= d+1} <Hhat (x) I>|
  double nu7 = 0;
  double to_g = 0;         // |E_x sum_{|tau| >= d+1} <Hhat (x) I> - <F(G) (x) I>|
  double nu8 = 0;
  double h_completeness = 0;
  double excess = 0;
  bool regime = false;     // k >= 400 m d
};

/// Hypotheses and endpoint quantities for a symmetric (m+1)-variable strategy
/// and projective slice sub-measurements G^x over P(m,q,d).
PastingReport pasting_report(const QuantumStrategy& s, const std::vector<SubMeasurement>& G,
                             const PastingParams& p);

/// Honest slices: G^x_g projects onto the seeds s with seeds[s](., x) = g.
std::vector<SubMeasurement> seed_slices(const Field& F, int m, int d, const std::vector<MultiPoly>& seeds);

}  // namespace lidtest
