#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "../tools/commands.hpp"
#include "lidtest/constants.hpp"
#include "lidtest/improvement.hpp"
#include "lidtest/linalg.hpp"
#include "lidtest/naimark.hpp"
#include "lidtest/pasting.hpp"
#include "lidtest/spectral.hpp"

using namespace lidtest;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

TestParams params(int q, int m, int d) {
  TestParams P;
  P.F = Field(params_for_order(q));
  P.m = m;
  P.d = d;
  return P;
}

MultiPoly random_poly(const TestParams& P, std::mt19937_64& rng) {
  return poly_from_index(P.F, P.m, P.d, rng() % polyspace_size(P.F, P.m, P.d));
}

std::vector<MultiPoly> random_seeds(const TestParams& P, int n, std::mt19937_64& rng) {
  std::vector<MultiPoly> s;
  for (int i = 0; i < n; ++i) s.push_back(random_poly(P, rng));
  return s;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome character_identities() {
  double worst = 0;
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    Field F(params_for_order(q));
    for (auto a : F.elements()) worst = std::max(worst, std::abs(F.character_sum(a) - (a == F.zero() ? 1.0 : 0.0)));
  }
  return {worst <= 1e-10, fmt("max deviation %.2e", worst)};
}

Outcome schwartz_zippel() {
  long violations = 0, pairs = 0;
  for (auto [m, q, d] : std::vector<std::array<int, 3>>{{1, 5, 2}, {2, 3, 1}, {2, 4, 1}}) {
    Field F(params_for_order(q));
    std::vector<std::vector<FieldElement>> tabs;
    for_each_poly(F, m, d, [&](std::uint64_t, const MultiPoly& g) { tabs.push_back(evaluation_table(F, g)); });
    std::uint64_t M = tabs[0].size();
    for (std::size_t i = 0; i < tabs.size(); ++i)
      for (std::size_t j = i + 1; j < tabs.size(); ++j) {
        std::uint64_t agree = 0;
        for (std::uint64_t u = 0; u < M; ++u) agree += tabs[i][u] == tabs[j][u];
        ++pairs;
        if (Rational(agree, M) > Rational(m * d, q)) ++violations;
      }
  }
  return {violations == 0, fmt("%.0f pairs, %.0f violations", pairs, violations)};
}

Outcome hypercube_spectrum() {
  double worst = 0;
  for (auto [m, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    SpectrumCheck s = verify_spectrum(hypercube(Field(params_for_order(q)), m));
    worst = std::max({worst, s.eigen_residual, std::abs(s.lambda2 - s.lambda2_expected)});
  }
  return {worst <= 1e-10, fmt("max residual %.2e", worst)};
}

Outcome poincare() {
  HypercubeGraph G = hypercube(Field(3, 1), 2);
  std::mt19937_64 rng(20240501);
  int failures = 0;
  double margin = 1e300;
  for (int rep = 0; rep < 200; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 3);
    std::vector<Mat> A;
    for (std::uint64_t u = 0; u < G.M; ++u) A.push_back(random_povm(dim, 2, rng)[0]);
    Mat psi = from_vector(random_unit_vector(dim * dim, rng), dim, dim);
    double m = 2 * local_variance(G, A, psi) - global_variance(G, A, psi);
    margin = std::min(margin, m);
    failures += m < -1e-9;
  }
  return {failures == 0, fmt("200 instances, %.0f failures, min margin %.3e", failures, margin)};
}

Outcome honest_completeness() {
  TestParams P = params(4, 2, 1);
  std::mt19937_64 rng(7);
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    ExactGoodness g = failure_probabilities(honest_strategy(P, random_poly(P, rng)));
    bad += !(g.eps == 0 && g.delta == 0 && g.gamma == 0);
  }
  return {bad == 0, fmt("20 polynomials, %.0f with nonzero failure", bad)};
}

Outcome example_1_5_check() {
  bool ok = true;
  std::string detail;
  for (auto [m, q, d] : std::vector<std::array<int, 3>>{{2, 5, 1}, {3, 4, 1}}) {
    TestParams P = params(q, m, d);
    ClassicalStrategy s = example_1_5(P);
    Rational loss = paper_axis_loss(s);
    Rational agree = max_points_agreement(s);
    Rational bound = 1 - m * Rational(1, m) + Rational(d + 1, q);
    P.weights = {1, 0, 0};
    ClassicalStrategy axis_only = s;
    axis_only.params = P;
    ExactGoodness g = failure_probabilities(axis_only);
    ok = ok && loss == Rational(1, m) && agree <= bound;
    detail += "(" + std::to_string(m) + "," + std::to_string(q) + "," + std::to_string(d) + "): line loss " +
              loss.str() + ", verdict failure " + g.eps.str() + ", agreement " + agree.str() + " <= " +
              bound.str() + "; ";
  }
  return {ok, detail};
}

Outcome naimark() {
  std::mt19937_64 rng(99);
  double worst = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 8);
    std::size_t n = 2 + rng() % 4;
    SubMeasurement A = random_povm(dim, n, rng), B = random_povm(dim, n, rng);
    Mat psi = from_vector(random_unit_vector(dim * dim, rng), dim, dim);
    DilatedPair d = naimark_dilate_pair(A, B, psi);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        worst = std::max(worst, std::abs(expect(psi, A[a], B[b]) - expect(d.psi, d.a.ops[a], d.b.ops[b])));
  }
  SubMeasurement half{{Mat::Identity(2, 2) / 2.0, Mat::Identity(2, 2) / 2.0}};
  Mat psi = maximally_entangled(2);
  Vec plus = Vec::Constant(2, 1.0 / std::sqrt(2.0));
  DilatedPair d = naimark_dilate_pair(half, half, psi, plus, plus);
  double before = state_distance(left_family({half}), right_family({half}), psi, {1.0});
  double after = state_distance(left_family({d.a.ops}), right_family({d.b.ops}), d.psi, {1.0});
  bool ok = worst <= 1e-9 && before <= 1e-12 && after >= 1 - 1e-9;
  return {ok, fmt("max statistics error %.2e; counterexample distance before %.2e, after %.6f", worst, before, after)};
}

Outcome orthogonalization() {
  std::mt19937_64 rng(4242);
  double proj = 0, margin = 1e300, qmargin = 1e300;
  int used = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int dim = 2 + static_cast<int>(rng() % 15);
    PovmPair pp = perturbed_pair(dim, 2 + rng() % 3, 0.002 + 0.02 * (rng() % 100) / 100.0, rng);
    OrthogonalizeResult r = orthogonalize(pp.A, pp.B, pp.psi);
    if (r.zeta > 0.25) continue;
    ++used;
    proj = std::max(proj, r.projectivity);
    margin = std::min(margin, r.bound - r.dist_P);
    qmargin = std::min(qmargin, r.q_completeness - (1 - 11 * std::pow(r.zeta, 0.25)));
  }
  bool ok = used == 100 && proj <= 1e-8 && margin >= -1e-7 && qmargin >= -1e-7;
  return {ok, fmt("projectivity %.2e, min distance margin %.3e, min Q-completeness margin %.3e", proj, margin, qmargin)};
}

Outcome sdp() {
  TestParams P = params(3, 1, 1);
  std::mt19937_64 rng(31337);
  double gap = 0, slack = 0, oracle = 0;
  for (int rep = 0; rep < 50; ++rep) {
    int D = 1 + static_cast<int>(rng() % 8);
    QuantumStrategy s = perturb(honest_quantum(P, random_seeds(P, D, rng)), 0.1, rng);
    SdpSolution sol = solve(build_instance(s));
    gap = std::max(gap, sol.gap);
    slack = std::max(slack, sol.slackness);
  }
  for (int rep = 0; rep < 10; ++rep) {
    int D = 1 + static_cast<int>(rng() % 8);
    SdpInstance inst = build_instance(honest_quantum(P, random_seeds(P, D, rng)));
    SdpSolution sol = solve(inst);
    oracle = std::max(oracle, (sol.Z - diagonal_oracle(inst)).cwiseAbs().maxCoeff());
  }
  bool ok = gap <= 1e-6 && slack <= 1e-5 && oracle <= 1e-7;
  return {ok, fmt("max gap %.2e, max slackness %.2e, diagonal oracle error %.2e", gap, slack, oracle)};
}

Outcome self_improvement() {
  TestParams P = params(3, 1, 1);
  std::mt19937_64 rng(555);
  double worst = 1e300, excess = -1;
  for (int rep = 0; rep < 25; ++rep) {
    auto sd = random_seeds(P, 1 + static_cast<int>(rng() % 3), rng);
    QuantumStrategy s = perturb(honest_quantum(P, sd), 0.01 + 0.05 * (rng() % 100) / 100.0, rng);
    ImproveReport r = improve(s, seed_measurement(P, sd)).report;
    worst = std::min({worst, r.completeness - (1 - r.nu - r.zeta), r.zeta - r.a_consistency, r.zeta - r.ssc_deficit,
                      r.zeta - r.boundedness});
    excess = std::max(excess, r.submeasurement_excess);
  }
  bool ok = worst >= -1e-7 && excess <= 1e-8;
  return {ok, fmt("min margin %.3e, max sub-measurement excess %.2e", worst, excess)};
}

Outcome pasting() {
  Field F(5, 1);
  std::mt19937_64 rng(8);
  TestParams P2 = params(5, 2, 1);
  auto sd = random_seeds(P2, 3, rng);
  auto G = seed_slices(F, 1, 1, sd);
  auto Ghat = complete_slices(G);
  double tele = 0;
  std::vector<FieldElement> xs(3);
  auto els = F.elements();
  for (int i = 0; i < 125; ++i) {
    xs = {els[i / 25], els[(i / 5) % 5], els[i % 5]};
    Mat t = sandwich_total(Ghat, xs);
    tele = std::max(tele, (t - Mat::Identity(t.rows(), t.cols())).cwiseAbs().maxCoeff());
  }
  PastedMeasurement pm = pasted_measurement(F, 1, 1, G, {3, true, 4096, 0});
  bool exact = true;
  for (std::size_t h = 0; h < pm.H.size(); ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double want = (i == j && poly_index(sd[i], 5) == h) ? 1.0 : 0.0;
        exact = exact && std::abs(pm.H[h](i, j) - want) < 1e-12;
      }
  TvCheck t3 = tv_distance_bound_check(5, 3), t2 = tv_distance_bound_check(5, 2);
  bool tv = t3.exact <= t3.collision_bound && t2.exact == t2.collision_bound;
  bool ok = tele <= 1e-9 && exact && tv;
  return {ok, fmt("telescoping residual %.2e; interpolant exact %.0f; TV k=3 %.4f", tele, exact,
                  static_cast<double>(t3.exact))};
}

Outcome scalar_lemmas() {
  int bad = 0;
  for (int i = 0; i < 100; ++i)
    for (int j = 1; j <= 100; ++j) bad += !scalar_trunc_inequality_check(i / 99.0, j / 200.0);
  int bad2 = 0;
  for (int d = 1; d <= 10; ++d)
    for (int i = 0; i < 10000; ++i) bad2 += !scalar_ineq_check(i / 9999.0, d);
  return {bad == 0 && bad2 == 0, fmt("trunc violations %.0f, lambda violations %.0f", bad, bad2)};
}

Outcome determinism() {
  std::vector<std::pair<std::string, json>> runs = {
      {"run-test", json::parse(R"({"params":{"field":{"q":3},"m":2,"d":1},"strategy":{"generator":"perturbed"},"seed":3,"rounds":500})")},
      {"round-povm", json::parse(R"({"method":"orthogonalize","batch":3,"dim":3,"seed":1})")},
      {"round-povm", json::parse(R"({"method":"naimark","batch":3,"dim":2,"seed":1})")},
      {"soundness-report", json::parse(R"({"params":{"field":{"q":3},"m":1,"d":1},"strategy":{"generator":"perturbed"},"seed":2})")},
      {"spectrum", json::parse(R"({"params":{"field":{"q":3},"m":2,"d":1},"variance_batch":3,"seed":4})")},
      {"sdp", json::parse(R"({"batch":3,"dim":3,"seed":5})")},
      {"paste", json::parse(R"({"params":{"field":{"q":3},"m":1,"d":1},"k":2,"eta":0.05,"seed":6})")},
  };
  int mismatches = 0;
  for (const auto& [cmd, cfg] : runs) {
    cli::RunConfig a{cmd, cfg, ".", 1}, b{cmd, cfg, ".", 3};
    if (dump_json(cli::run_command(a)) != dump_json(cli::run_command(b))) ++mismatches;
  }
  return {mismatches == 0, fmt("%.0f commands, %.0f mismatches (1 vs 3 workers)", runs.size(), mismatches)};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"character identities", character_identities},
      {"Schwartz-Zippel exhaustive", schwartz_zippel},
      {"hypercube spectrum", hypercube_spectrum},
      {"Poincare variance", poincare},
      {"honest completeness", honest_completeness},
      {"Example 1.5 reproduction", example_1_5_check},
      {"Naimark dilation", naimark},
      {"orthogonalization", orthogonalization},
      {"SDP", sdp},
      {"self-improvement", self_improvement},
      {"pasting", pasting},
      {"scalar lemmas", scalar_lemmas},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.ok;
    std::printf("%s %2zu %s: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
