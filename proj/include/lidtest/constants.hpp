#pragma once

#include <string>
#include <vector>

namespace lidtest {

/// Measured error parameters of an instance; unused fields stay zero.
struct BoundInputs {
  double eps = 0, delta = 0, gamma = 0;
  double zeta = 0, kappa = 0, theta = 0;
  int m = 0, d = 0, q = 0, k = 0;
};

struct ConstantEntry {
  std::string id;
  std::string formula;
  double (*eval)(const BoundInputs&);
};

/// The lemma constant table; every reported bound is computed from here.
const std::vector<ConstantEntry>& constant_table();
/// Throws DomainError on an unknown id.
double paper_bound(const std::string& id, const BoundInputs& in);

}  // namespace lidtest
