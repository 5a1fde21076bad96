#pragma once

#include <cstdint>

#include "lidtest/measurements.hpp"

namespace lidtest {

/// Projective dilation of one sub-measurement on H (x) C^K, K = k for a
/// measurement and k + 1 otherwise (the extra slot absorbs I - sum A_a).
/// Index of |i>|alpha> is i K + alpha.
struct Dilation {
  Mat U;
  SubMeasurement ops;
  Vec aux;
  int aux_dim = 0;
};

/// aux defaults to |0>. U maps |h>|aux> to sum_a sqrt(A_a)|h>|a> (+ the
/// remainder slot); the complement is aligned with I (x) (I - |aux><aux|) by
/// a polar factor, so U = I whenever the isometry already is I (x) |aux>.
Dilation naimark_dilate(const SubMeasurement& A, const Vec& aux = Vec());

struct DilatedPair {
  Dilation a;
  Dilation b;
  Mat psi;  // psi (x) auxA (x) auxB, regrouped as (H_A (x) K_A) x (H_B (x) K_B)
};

DilatedPair naimark_dilate_pair(const SubMeasurement& A, const SubMeasurement& B, const Mat& psi,
                                const Vec& auxA = Vec(), const Vec& auxB = Vec());

/// Per-question dilation of whole families: one aux register per question,
/// all initialised to |0>. Throws GuardExceeded when a side exceeds cap.
struct DilatedFamilies {
  Family A;
  Family B;
  Mat psi;
};

DilatedFamilies naimark_dilate_families(const Family& A, const Family& B, const Mat& psi,
                                        std::uint64_t cap = 256);

}  // namespace lidtest
