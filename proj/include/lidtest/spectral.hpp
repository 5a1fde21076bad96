#pragma once

#include <cstdint>
#include <vector>

#include "lidtest/measurements.hpp"
#include "lidtest/poly_space.hpp"
#include "lidtest/strategies.hpp"

namespace lidtest {

/// Cayley graph on F_q^m: u ~ u + x e_i with u, i, x uniform.
struct HypercubeGraph {
  Field F;
  int m = 1;
  std::uint64_t M = 0;
};

HypercubeGraph hypercube(const Field& F, int m);  // M <= 4096

/// K = E_{(u,v)~C} |u><v|
Eigen::MatrixXd adjacency(const HypercubeGraph& G);
/// L = I/M - K
Eigen::MatrixXd laplacian(const HypercubeGraph& G);

struct CharacterEigenpair {
  Point alpha;
  int weight = 0;  // number of nonzero coordinates
  double eigenvalue = 0;
};

/// phi_alpha = M^{-1/2} sum_u omega^{tr(u . alpha)} |u>
Vec character_vector(const HypercubeGraph& G, const Point& alpha);
/// Analytic eigenpairs, eigenvalue (1/M)(m - |alpha|)/m, ordered by point index of alpha.
std::vector<CharacterEigenpair> character_eigensystem(const HypercubeGraph& G);

struct SpectrumCheck {
  double eigen_residual = 0;           // max_alpha ||K phi - lambda phi||
  double gram_residual = 0;            // ||Phi^* Phi - I||_max
  double reconstruction_residual = 0;  // ||K - sum lambda phi phi^*||_F
  double lambda2 = 0;                  // second smallest eigenvalue of L, numerically
  double lambda2_expected = 0;         // 1/(mM)
};

SpectrumCheck verify_spectrum(const HypercubeGraph& G);

/// Per-point operators 0 <= A^u <= I on the left factor.
double local_variance(const HypercubeGraph& G, const std::vector<Mat>& A, const Mat& psi);
double global_variance(const HypercubeGraph& G, const std::vector<Mat>& A, const Mat& psi);

struct PointsVarianceReport {
  double generalize_b = 0;
  double generalize_b_bound = 0;  // md/q
  double local = 0;
  double local_bound = 0;         // 24(eps + delta + md/q)
  double global = 0;
  double global_bound = 0;        // 24m(eps + delta + md/q)
  Goodness goodness;
};

/// Measured sides of the points-variance lemmas for a symmetric strategy and
/// a sub-measurement G over P(m,q,d) (outcomes indexed by poly_index) on the right factor.
PointsVarianceReport points_variance_diagnostics(const QuantumStrategy& s, const SubMeasurement& G);

}  // namespace lidtest
