#include "lidtest/naimark.hpp"

#include <string>

#include "lidtest/finite_field.hpp"

namespace lidtest {

namespace {

Vec basis_vector(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

bool has_remainder(const SubMeasurement& A) {
  Mat rest = Mat::Identity(A.dim(), A.dim()) - A.total();
  return rest.cwiseAbs().maxCoeff() > 1e-12;
}

// Reorders an operator on H (x) K_x (x) rest into H (x) K_1 (x) ... (x) K_n.
Mat embed(const Mat& op, int n, const std::vector<int>& dims, std::size_t x) {
  std::size_t regs = dims.size();
  std::uint64_t total = 1;
  for (int k : dims) total *= static_cast<std::uint64_t>(k);
  std::uint64_t rest = total / dims[x];
  Mat big = kron(op, Mat::Identity(static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(rest)));
  // perm[(h, a_x, rest digits)] = (h, a_1..a_n)
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n * total));
  std::vector<int> digit(regs);
  for (int h = 0; h < n; ++h)
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t r = regs; r-- > 0;) {
        digit[r] = static_cast<int>(t % dims[r]);
        t /= dims[r];
      }
      std::uint64_t src = digit[x];
      for (std::size_t r = 0; r < regs; ++r)
        if (r != x) src = src * dims[r] + digit[r];
      perm[h * total + src] = static_cast<Eigen::Index>(h * total + idx);
    }
  Mat out(big.rows(), big.cols());
  for (Eigen::Index r = 0; r < big.rows(); ++r)
    for (Eigen::Index c = 0; c < big.cols(); ++c) out(perm[r], perm[c]) = big(r, c);
  return out;
}

}  // namespace

Dilation naimark_dilate(const SubMeasurement& A, const Vec& aux_in) {
  int n = A.dim();
  int k = static_cast<int>(A.size());
  bool extra = has_remainder(A);
  int K = k + (extra ? 1 : 0);
  if (K < 1) throw DomainError("naimark: empty measurement");
  Vec aux = aux_in.size() ? aux_in : basis_vector(K, 0);
  if (aux.size() != K) throw DomainError("naimark: aux register has wrong dimension");
  aux /= aux.norm();

  Mat In = Mat::Identity(n, n);
  Mat V = kron(In, aux);
  Mat W = Mat::Zero(n * K, n);
  for (int a = 0; a < k; ++a) W += kron(psd_sqrt(A[a]), basis_vector(K, a));
  if (extra) W += kron(psd_sqrt(In - A.total()), basis_vector(K, k));

  Mat U = W * V.adjoint();
  if (K > 1) {
    Mat Vperp = kron(In, orthogonal_complement(aux));
    Mat B = orthogonal_complement(W);
    Mat Wperp = B * polar_unitary(B.adjoint() * Vperp);
    U += Wperp * Vperp.adjoint();
  }

  Dilation D;
  D.U = U;
  D.aux = aux;
  D.aux_dim = K;
  for (int a = 0; a < k; ++a) {
    Vec e = basis_vector(K, a);
    Mat proj = kron(In, e * e.adjoint());
    D.ops.ops.push_back(hermitian_part(U.adjoint() * proj * U));
  }
  return D;
}

DilatedPair naimark_dilate_pair(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi, const Vec& auxA,
                                const Vec& auxB) {
  if (psi.rows() != A.dim() || psi.cols() != B.dim()) throw DomainError("naimark: state dimension mismatch");
  DilatedPair out;
  out.a = naimark_dilate(A, auxA);
  out.b = naimark_dilate(B, auxB);
  out.psi = kron(psi, out.a.aux * out.b.aux.transpose());
  return out;
}

DilatedFamilies naimark_dilate_families(const Family& A, const Family& B, const Mat& psi, std::uint64_t cap) {
  auto side = [&](const Family& F, int n, Family& out) -> std::vector<int> {
    std::vector<Dilation> dil;
    std::vector<int> dims;
    std::uint64_t total = static_cast<std::uint64_t>(n);
    for (const auto& M : F) {
      dil.push_back(naimark_dilate(M));
      dims.push_back(dil.back().aux_dim);
      total *= static_cast<std::uint64_t>(dims.back());
      if (total > cap) throw GuardExceeded("naimark: dilated dimension exceeds cap " + std::to_string(cap));
    }
    out.clear();
    for (std::size_t x = 0; x < F.size(); ++x) {
      SubMeasurement M;
      for (const auto& op : dil[x].ops.ops) M.ops.push_back(embed(op, n, dims, x));
      out.push_back(std::move(M));
    }
    return dims;
  };
  DilatedFamilies out;
  auto dA = side(A, static_cast<int>(psi.rows()), out.A);
  auto dB = side(B, static_cast<int>(psi.cols()), out.B);
  auto width = [](const std::vector<int>& d) {
    Eigen::Index w = 1;
    for (int k : d) w *= k;
    return w;
  };
  Mat aux = Mat::Zero(width(dA), width(dB));
  aux(0, 0) = 1.0;
  out.psi = kron(psi, aux);
  return out;
}

}  // namespace lidtest
