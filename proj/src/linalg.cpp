#include "lidtest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lidtest {

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Mat hermitian_part(const Mat& x) { return (x + x.adjoint()) / 2.0; }

bool is_hermitian(const Mat& x, double tol) {
  return x.rows() == x.cols() && (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Mat& x) {
  if (x.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(x), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Mat& x) {
  if (x.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(x), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Mat spectral_apply(const Mat& x, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(x));
  Eigen::VectorXd lam = es.eigenvalues().unaryExpr(f);
  const Mat& V = es.eigenvectors();
  return V * lam.cast<cplx>().asDiagonal() * V.adjoint();
}

Mat psd_sqrt(const Mat& x) {
  return spectral_apply(x, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

Mat polar_unitary(const Mat& x) {
  Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Index k = std::min(x.rows(), x.cols());
  return svd.matrixU().leftCols(k) * svd.matrixV().leftCols(k).adjoint();
}

Mat orthogonal_complement(const Mat& cols, double tol) {
  Eigen::Index n = cols.rows();
  if (cols.cols() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeFullU);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return svd.matrixU().rightCols(n - rank);
}

double max_step_psd(const Mat& x, const Mat& dx) {
  // Largest a with x + a dx >= 0, x > 0: a = 1 / max eig(-L^{-1} dx L^{-*}).
  Eigen::LLT<Mat> llt(hermitian_part(x));
  Mat Linv = llt.matrixL().solve(Mat::Identity(x.rows(), x.cols()));
  Mat w = Linv * hermitian_part(dx) * Linv.adjoint();
  double lmin = min_eigenvalue(w);
  if (lmin >= 0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

namespace {

Mat gaussian(int r, int c, std::mt19937_64& rng, bool complex_entries) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Mat g(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      double re = n01(rng);
      double im = complex_entries ? n01(rng) : 0.0;
      g(i, j) = cplx(re, im);
    }
  return g;
}

}  // namespace

Mat random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(gaussian(n, n, rng, true));
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    double a = std::abs(R(i, i));
    if (a > 0) Q.col(i) *= R(i, i) / a;
  }
  return Q;
}

Mat random_orthogonal(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(gaussian(n, n, rng, false));
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    if (qr.matrixQR()(i, i).real() < 0) Q.col(i) *= -1.0;
  return Q.real().cast<cplx>();
}

Vec random_unit_vector(int n, std::mt19937_64& rng) {
  Vec v = gaussian(n, 1, rng, true).col(0);
  return v / v.norm();
}

Mat random_psd(int n, int rank, std::mt19937_64& rng) {
  Mat g = gaussian(n, rank, rng, true);
  return g * g.adjoint();
}

Mat apply(const Mat& x, const Mat& psi, const Mat& y) {
  Mat r = x.size() ? Mat(x * psi) : psi;
  if (y.size()) r = r * y.transpose();
  return r;
}

cplx expect(const Mat& psi, const Mat& x, const Mat& y) { return psi.conjugate().cwiseProduct(apply(x, psi, y)).sum(); }

double norm_sq(const Mat& psi, const Mat& x, const Mat& y) { return apply(x, psi, y).squaredNorm(); }

Vec to_vector(const Mat& psi) {
  Vec v(psi.size());
  for (Eigen::Index i = 0; i < psi.rows(); ++i)
    for (Eigen::Index j = 0; j < psi.cols(); ++j) v(i * psi.cols() + j) = psi(i, j);
  return v;
}

Mat from_vector(const Vec& v, int dA, int dB) {
  Mat psi(dA, dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j) psi(i, j) = v(i * dB + j);
  return psi;
}

Mat maximally_entangled(int d) { return Mat::Identity(d, d) / std::sqrt(static_cast<double>(d)); }

bool swap_invariant(const Mat& psi, double tol) {
  return psi.rows() == psi.cols() && (psi - psi.transpose()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace lidtest
