#include <gtest/gtest.h>

#include <random>

#include "lidtest/linalg.hpp"
#include "lidtest/measurements.hpp"
#include "lidtest/naimark.hpp"

using namespace lidtest;

namespace {

SubMeasurement mixed(int dim, int n) {
  SubMeasurement A;
  for (int a = 0; a < n; ++a) A.ops.push_back(Mat::Identity(dim, dim) / static_cast<double>(n));
  return A;
}

Vec flatten(const Mat& psi) {
  Vec v(psi.size());
  for (Eigen::Index i = 0; i < psi.rows(); ++i)
    for (Eigen::Index j = 0; j < psi.cols(); ++j) v(i * psi.cols() + j) = psi(i, j);
  return v;
}

}  // namespace

// numeric_oracle.py: the I/n family has consistency (n-1)/n on any state.
TEST(Measurements, MixedFamilyConsistency) {
  std::mt19937_64 rng(1);
  for (int n : {2, 3, 5}) {
    Mat psi = from_vector(random_unit_vector(9, rng), 3, 3);
    EXPECT_NEAR(consistency(mixed(3, n), mixed(3, n), psi), (n - 1.0) / n, 1e-12);
  }
}

TEST(Measurements, IdenticalProjectiveFamilies) {
  std::mt19937_64 rng(2);
  SubMeasurement P = random_projective(3, 3, rng, true);
  Mat psi = maximally_entangled(3);
  EXPECT_NEAR(consistency(P, P, psi), 0.0, 1e-12);
  EXPECT_NEAR(state_distance(left_family({P}), left_family({P}), psi, {1.0}), 0.0, 1e-12);
  Vec v = flatten(psi);
  EXPECT_NEAR(state_distance(SubMeasurement{{kron(P[0], Mat::Identity(3, 3))}}, SubMeasurement{{kron(P[0], Mat::Identity(3, 3))}}, v), 0.0, 1e-12);
  EXPECT_TRUE(is_projective(P));
}

TEST(Measurements, ConsistencyAgreementComplement) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    SubMeasurement A = random_povm(3, 4, rng), B = random_povm(3, 4, rng);
    Mat psi = from_vector(random_unit_vector(9, rng), 3, 3);
    Family FA{A}, FB{B};
    EXPECT_NEAR(consistency(FA, FB, psi, {1.0}) + agreement(FA, FB, psi, {1.0}), 1.0, 1e-12);
  }
}

TEST(Measurements, DistanceVersusConsistencyForProjective) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    SubMeasurement A = random_projective(3, 3, rng), B = random_projective(3, 3, rng);
    Mat psi = from_vector(random_unit_vector(9, rng), 3, 3);
    double c = consistency(A, B, psi);
    LocalFamily L = left_family({A}), R = right_family({B});
    double s = state_distance(L, R, psi, {1.0});
    EXPECT_NEAR(s, 2 * c, 1e-10);
  }
}

TEST(Measurements, PostProcessAndComplete) {
  std::mt19937_64 rng(5);
  SubMeasurement A = random_povm(2, 4, rng);
  SubMeasurement B = post_process(A, {0, 1, 1, 0}, 2);
  EXPECT_LT((B.total() - A.total()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((B[0] - A[0] - A[3]).cwiseAbs().maxCoeff(), 1e-12);
  SubMeasurement S{{A[0], A[1]}};
  SubMeasurement C = complete(S);
  EXPECT_EQ(C.size(), 3u);
  EXPECT_TRUE(check_measurement(C).ok);
  EXPECT_TRUE(check_submeasurement(S).ok);
  EXPECT_FALSE(check_measurement(S).ok);
}

TEST(Measurements, StrongSelfConsistencyOfProjective) {
  std::mt19937_64 rng(6);
  SubMeasurement P = random_projective(3, 2, rng, true);
  EXPECT_NEAR(strong_self_consistency(P, maximally_entangled(3)), 0.0, 1e-12);
}

TEST(Naimark, PreservesJointStatistics) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 4);
    std::size_t n = 2 + rng() % 3;
    SubMeasurement A = random_povm(dim, n, rng), B = random_povm(dim, n, rng);
    Mat psi = from_vector(random_unit_vector(dim * dim, rng), dim, dim);
    DilatedPair d = naimark_dilate_pair(A, B, psi);
    EXPECT_TRUE(is_projective(d.a.ops, 1e-9));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        EXPECT_NEAR(std::abs(expect(psi, A[a], B[b]) - expect(d.psi, d.a.ops[a], d.b.ops[b])), 0.0, 1e-10);
  }
}

TEST(Naimark, ProjectiveInputIsFixedPoint) {
  std::mt19937_64 rng(8);
  SubMeasurement P = random_projective(2, 2, rng);
  Dilation d = naimark_dilate(P);
  EXPECT_TRUE(is_projective(d.ops));
  Mat V = kron(Mat::Identity(2, 2), d.aux);
  for (std::size_t a = 0; a < P.size(); ++a)
    EXPECT_LT((V.adjoint() * d.ops[a] * V - P[a]).cwiseAbs().maxCoeff(), 1e-10);
}

// A = B = {I/2, I/2} with |+> auxiliaries: state distance 0 before dilation, 1 after,
// while the consistency 1/2 is preserved.
TEST(Naimark, DoesNotPreserveStateDistance) {
  SubMeasurement A = mixed(2, 2);
  Mat psi = maximally_entangled(2);
  Vec plus = Vec::Constant(2, 1.0 / std::sqrt(2.0));
  DilatedPair d = naimark_dilate_pair(A, A, psi, plus, plus);
  EXPECT_NEAR(state_distance(left_family({A}), right_family({A}), psi, {1.0}), 0.0, 1e-12);
  double after = state_distance(left_family({d.a.ops}), right_family({d.b.ops}), d.psi, {1.0});
  EXPECT_GE(after, 1.0 - 1e-9);
  EXPECT_NEAR(consistency(d.a.ops, d.b.ops, d.psi), 0.5, 1e-12);
  EXPECT_NEAR(consistency(A, A, psi), 0.5, 1e-12);
}
