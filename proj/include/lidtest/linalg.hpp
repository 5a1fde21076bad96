#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace lidtest {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat kron(const Mat& a, const Mat& b);
Mat hermitian_part(const Mat& x);
bool is_hermitian(const Mat& x, double tol = 1e-10);
double min_eigenvalue(const Mat& x);
double max_eigenvalue(const Mat& x);

/// f applied to the spectrum of a Hermitian matrix.
Mat spectral_apply(const Mat& x, const std::function<double(double)>& f);
Mat psd_sqrt(const Mat& x);
/// Unitary factor of the polar decomposition.
Mat polar_unitary(const Mat& x);
/// Orthonormal basis of the orthogonal complement of range(cols).
Mat orthogonal_complement(const Mat& cols, double tol = 1e-10);
/// Largest a with x + a dx >= 0, for x positive definite (inf if unbounded).
double max_step_psd(const Mat& x, const Mat& dx);

Mat random_unitary(int n, std::mt19937_64& rng);
Mat random_orthogonal(int n, std::mt19937_64& rng);
Vec random_unit_vector(int n, std::mt19937_64& rng);
Mat random_psd(int n, int rank, std::mt19937_64& rng);

// Bipartite pure states on C^{dA} (x) C^{dB} are stored as the dA x dB
// coefficient matrix Psi with psi_{i dB + j} = Psi(i, j). An empty operator
// stands for the identity.
struct Local {
  Mat left;
  Mat right;
};

Mat apply(const Mat& x, const Mat& psi, const Mat& y);
inline Mat apply(const Local& op, const Mat& psi) { return apply(op.left, psi, op.right); }
/// <psi| X (x) Y |psi>
cplx expect(const Mat& psi, const Mat& x, const Mat& y);
/// || (X (x) Y) psi ||^2
double norm_sq(const Mat& psi, const Mat& x, const Mat& y);

Vec to_vector(const Mat& psi);
Mat from_vector(const Vec& v, int dA, int dB);
Mat maximally_entangled(int d);
bool swap_invariant(const Mat& psi, double tol = 1e-9);

}  // namespace lidtest
