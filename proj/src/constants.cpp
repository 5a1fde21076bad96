#include "lidtest/constants.hpp"

#include <algorithm>
#include <cmath>

#include "lidtest/finite_field.hpp"

namespace lidtest {

namespace {

double rt(double v, double p) { return std::pow(std::max(v, 0.0), 1.0 / p); }
double dq(const BoundInputs& in) { return static_cast<double>(in.d) / in.q; }

double pasting_sum(const BoundInputs& in) {
  return rt(in.eps, 32) + rt(in.delta, 32) + rt(in.gamma, 32) + rt(in.zeta, 32) + rt(dq(in), 32);
}

}  // namespace

const std::vector<ConstantEntry>& constant_table() {
  static const std::vector<ConstantEntry> table = {
      {"orthogonalize.measurement", "84 zeta^{1/4}", [](const BoundInputs& in) { return 84.0 * rt(in.zeta, 4); }},
      {"orthogonalize.submeasurement", "100 zeta^{1/4}",
       [](const BoundInputs& in) { return 100.0 * rt(in.zeta, 4); }},
      {"orthogonalize.q_completeness", "1 - 11 zeta^{1/4}",
       [](const BoundInputs& in) { return 1.0 - 11.0 * rt(in.zeta, 4); }},
      {"points_variance.generalize_b", "m d / q", [](const BoundInputs& in) { return in.m * dq(in); }},
      {"points_variance.local", "24 (eps + delta + m d / q)",
       [](const BoundInputs& in) { return 24.0 * (in.eps + in.delta + in.m * dq(in)); }},
      {"points_variance.global", "24 m (eps + delta + m d / q)",
       [](const BoundInputs& in) { return 24.0 * in.m * (in.eps + in.delta + in.m * dq(in)); }},
      {"improve.helper", "100 m (eps^{1/2} + delta^{1/2} + (d/q)^{1/2})",
       [](const BoundInputs& in) { return 100.0 * in.m * (rt(in.eps, 2) + rt(in.delta, 2) + rt(dq(in), 2)); }},
      {"improve.projective", "3000 m (eps^{1/32} + delta^{1/32} + (d/q)^{1/32})",
       [](const BoundInputs& in) {
         return 3000.0 * in.m * (rt(in.eps, 32) + rt(in.delta, 32) + rt(dq(in), 32));
       }},
      {"commutativity.points", "32 gamma m", [](const BoundInputs& in) { return 32.0 * in.gamma * in.m; }},
      {"commutativity.g", "30 m (gamma^{1/4} + zeta^{1/4} + (d/q)^{1/4})",
       [](const BoundInputs& in) { return 30.0 * in.m * (rt(in.gamma, 4) + rt(in.zeta, 4) + rt(dq(in), 4)); }},
      {"commutativity.g_evaluated", "48 m (gamma^{1/2} + zeta^{1/2})",
       [](const BoundInputs& in) { return 48.0 * in.m * (rt(in.gamma, 2) + rt(in.zeta, 2)); }},
      {"pasting.nu", "100 k^2 m (eps^{1/32} + delta^{1/32} + gamma^{1/32} + zeta^{1/32} + (d/q)^{1/32})",
       [](const BoundInputs& in) { return 100.0 * in.k * in.k * in.m * pasting_sum(in); }},
      {"pasting.sigma", "kappa (1 + 1/(100 m)) + 2 nu + exp(-k / (80000 m^2))",
       [](const BoundInputs& in) {
         double nu = 100.0 * in.k * in.k * in.m * pasting_sum(in);
         return in.kappa * (1.0 + 1.0 / (100.0 * in.m)) + 2.0 * nu + std::exp(-in.k / (80000.0 * in.m * in.m));
       }},
      {"pasting.nu6", "44 k^2 m (eps^{1/32} + delta^{1/32} + gamma^{1/32} + zeta^{1/32} + (d/q)^{1/32})",
       [](const BoundInputs& in) { return 44.0 * in.k * in.k * in.m * pasting_sum(in); }},
      {"pasting.nu7", "46 k^2 m (eps^{1/32} + delta^{1/32} + gamma^{1/32} + zeta^{1/32} + (d/q)^{1/32})",
       [](const BoundInputs& in) { return 46.0 * in.k * in.k * in.m * pasting_sum(in); }},
      {"pasting.nu8", "46 k m (gamma^{1/32} + zeta^{1/32} + (d/q)^{1/32})",
       [](const BoundInputs& in) {
         return 46.0 * in.k * in.m * (rt(in.gamma, 32) + rt(in.zeta, 32) + rt(dq(in), 32));
       }},
      {"pasting.chernoff", "1 - kappa / (1 - theta) - exp(-theta^2 k / 2)",
       [](const BoundInputs& in) {
         return 1.0 - in.kappa / (1.0 - in.theta) - std::exp(-in.theta * in.theta * in.k / 2.0);
       }},
      {"main.nu", "100000 k^2 m^4 (eps^{1/40000} + (d/q)^{1/40000} + exp(-k / (2560000 m^2)))",
       [](const BoundInputs& in) {
         double m4 = std::pow(in.m, 4);
         return 100000.0 * in.k * in.k * m4 *
                (rt(in.eps, 40000) + rt(dq(in), 40000) + std::exp(-in.k / (2560000.0 * in.m * in.m)));
       }},
  };
  return table;
}

double paper_bound(const std::string& id, const BoundInputs& in) {
  for (const auto& e : constant_table())
    if (e.id == id) return e.eval(in);
  throw DomainError("paper_bound: unknown constant id " + id);
}

}  // namespace lidtest
