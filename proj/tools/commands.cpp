#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <thread>

#include "lidtest/constants.hpp"
#include "lidtest/naimark.hpp"
#include "lidtest/strategy_io.hpp"

namespace lidtest::cli {

namespace {

template <class T>
T get(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const std::exception& e) {
    throw ConfigError("config field '" + key + "': " + e.what());
  }
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Results are stored by index.
std::vector<json> parallel_map(std::size_t n, int workers, const std::function<json(std::size_t)>& fn) {
  std::vector<json> out(n);
  std::vector<std::exception_ptr> errors(n);
  int w = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += w) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

TestParams params_of(const json& cfg) {
  if (!cfg.contains("params")) throw ConfigError("config is missing 'params'");
  try {
    return params_from_json(cfg.at("params"));
  } catch (const StrategyInvalid& e) {
    throw ConfigError(std::string("params: ") + e.what());
  } catch (const GuardExceeded&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
}

MultiPoly random_poly(const Field& F, int m, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, polyspace_size(F, m, d) - 1);
  return poly_from_index(F, m, d, pick(rng));
}

std::vector<MultiPoly> random_seeds(const TestParams& P, int count, std::mt19937_64& rng) {
  if (count < 1) throw ConfigError("'seeds' must be at least 1");
  std::vector<MultiPoly> s;
  for (int i = 0; i < count; ++i) s.push_back(random_poly(P.F, P.m, P.d, rng));
  return s;
}

struct Loaded {
  AnyStrategy strategy;
  std::string source;
};

Loaded strategy_of(const RunConfig& rc, const TestParams& P, std::uint64_t seed) {
  const json& cfg = rc.cfg;
  if (!cfg.contains("strategy")) throw ConfigError("config is missing 'strategy'");
  const json& sj = cfg.at("strategy");
  if (sj.contains("file")) {
    std::filesystem::path p = sj.at("file").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(rc.base_dir) / p;
    return {load_strategy(p.string()), "file"};
  }
  std::string gen = get<std::string>(sj, "generator", "");
  std::mt19937_64 rng(seed);
  try {
    if (gen == "honest") {
      MultiPoly g = sj.contains("poly_index") ? poly_from_index(P.F, P.m, P.d, sj.at("poly_index").get<std::uint64_t>())
                                              : random_poly(P.F, P.m, P.d, rng);
      return {honest_strategy(P, g), gen};
    }
    if (gen == "degree_overflow" || gen == "example_1_5") return {example_1_5(P), "degree_overflow"};
    if (gen == "random_classical") return {random_classical(P, rng), gen};
    if (gen == "honest_quantum") return {honest_quantum(P, random_seeds(P, get<int>(sj, "seeds", 2), rng)), gen};
    if (gen == "perturbed") {
      QuantumStrategy s = honest_quantum(P, random_seeds(P, get<int>(sj, "seeds", 2), rng));
      return {perturb(s, get<double>(sj, "eta", 0.05), rng), gen};
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("generator ") + gen + ": " + e.what());
  }
  throw ConfigError("unknown strategy generator '" + gen + "'");
}

QuantumStrategy as_quantum(const AnyStrategy& s) {
  if (auto* q = std::get_if<QuantumStrategy>(&s)) return *q;
  if (auto* c = std::get_if<ClassicalStrategy>(&s)) return embed_classical(*c);
  return embed_classical(std::get<RandomizedStrategy>(s));
}

std::string type_name(const AnyStrategy& s) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ClassicalStrategy>) return "classical";
        else if constexpr (std::is_same_v<T, RandomizedStrategy>) return "randomized";
        else return "quantum";
      },
      s);
}

double weighted_failure(const TestParams& P, double e, double d, double g) {
  double w0 = static_cast<double>(P.weights[0]), w1 = static_cast<double>(P.weights[1]),
         w2 = static_cast<double>(P.weights[2]);
  return (w0 * e + w1 * d + w2 * g) / (w0 + w1 + w2);
}

// ---- run-test

json cmd_run_test(const RunConfig& rc, std::uint64_t seed) {
  TestParams P = params_of(rc.cfg);
  Loaded L = strategy_of(rc, P, seed);
  json r{{"strategy", {{"type", type_name(L.strategy)}, {"source", L.source}}}};
  std::uint64_t rounds = get<std::uint64_t>(rc.cfg, "rounds", 0);
  bool enumerable = true;
  try {
    support_size(P);
  } catch (const GuardExceeded&) {
    enumerable = false;
  }
  std::optional<Goodness> exact;
  if (enumerable) {
    if (auto* c = std::get_if<ClassicalStrategy>(&L.strategy)) {
      ExactGoodness g = failure_probabilities(*c);
      r["exact"] = to_json(g);
      exact = to_double(g);
    } else if (auto* m = std::get_if<RandomizedStrategy>(&L.strategy)) {
      ExactGoodness g = failure_probabilities(*m);
      r["exact"] = to_json(g);
      exact = to_double(g);
    } else {
      exact = failure_probabilities(std::get<QuantumStrategy>(L.strategy));
      r["exact"] = to_json(*exact);
    }
    r["failure_total"] = num(weighted_failure(P, exact->eps, exact->delta, exact->gamma));
  } else if (rounds == 0) {
    rounds = 100000;
  }
  if (rounds > 0) {
    McEstimate e;
    if (auto* c = std::get_if<ClassicalStrategy>(&L.strategy))
      e = monte_carlo(*c, rounds, seed);
    else
      e = monte_carlo(as_quantum(L.strategy), rounds, seed);
    r["monte_carlo"] = to_json(e);
    if (exact) {
      auto within = [](double est, double se, double truth) { return std::abs(est - truth) <= 3.0 * se + 1e-12; };
      r["monte_carlo"]["within_3_sigma"] = within(e.failure.eps, e.stderr_.eps, exact->eps) &&
                                           within(e.failure.delta, e.stderr_.delta, exact->delta) &&
                                           within(e.failure.gamma, e.stderr_.gamma, exact->gamma);
    }
  }
  if (auto* c = std::get_if<ClassicalStrategy>(&L.strategy); c && get<bool>(rc.cfg, "axis_accounting", L.source == "degree_overflow")) {
    Rational loss = paper_axis_loss(*c);
    Rational agree = max_points_agreement(*c);
    Rational bound = 1 - P.m * loss + Rational(P.d + 1, P.q());
    r["axis_accounting"] = {{"axis_loss", rational(loss)},
                             {"max_points_agreement", rational(agree)},
                             {"agreement_bound", rational(bound)},
                             {"agreement_within_bound", agree <= bound}};
  }
  return r;
}

// ---- round-povm

json cmd_round_povm(const RunConfig& rc, std::uint64_t seed) {
  std::string method = get<std::string>(rc.cfg, "method", "orthogonalize");
  int batch = get<int>(rc.cfg, "batch", 10);
  int dim = get<int>(rc.cfg, "dim", 4);
  int outcomes = get<int>(rc.cfg, "outcomes", 3);
  double eta = get<double>(rc.cfg, "eta", 0.02);
  if (batch < 1 || dim < 1 || outcomes < 1) throw ConfigError("batch, dim and outcomes must be positive");
  if (dim > 16) throw GuardExceeded("round-povm: dim exceeds 16");
  if (method != "orthogonalize" && method != "orthogonalize_sub" && method != "naimark")
    throw ConfigError("unknown method '" + method + "'");
  if (method == "orthogonalize_sub" && outcomes < 2) throw ConfigError("orthogonalize_sub needs at least 2 outcomes");
  auto items = parallel_map(batch, rc.workers, [&](std::size_t i) -> json {
    std::mt19937_64 rng(instance_seed(seed, i));
    if (method == "naimark") {
      SubMeasurement A = random_povm(dim, outcomes, rng), B = random_povm(dim, outcomes, rng);
      Mat psi = from_vector(random_unit_vector(dim * dim, rng), dim, dim);
      DilatedPair d = naimark_dilate_pair(A, B, psi);
      double err = 0;
      for (int a = 0; a < outcomes; ++a)
        for (int b = 0; b < outcomes; ++b)
          err = std::max(err, std::abs(expect(psi, A[a], B[b]) - expect(d.psi, d.a.ops[a], d.b.ops[b])));
      return json{{"statistics_error", num(err)},
                  {"projectivity", num(std::max(projectivity_residual(d.a.ops), projectivity_residual(d.b.ops)))}};
    }
    PovmPair pp = perturbed_pair(dim, outcomes, eta, rng);
    OrthogonalizeResult o;
    json j;
    if (method == "orthogonalize") {
      o = orthogonalize(pp.A, pp.B, pp.psi);
      j = to_json(o);
      j["bounds"] = json::array({to_json(upper_bound_report("orthogonalize.measurement", o.dist_P, o.bound)),
                                 to_json(lower_bound_report("orthogonalize.q_completeness", o.q_completeness,
                                                            paper_bound("orthogonalize.q_completeness", {.zeta = o.zeta})))});
    } else {
      SubMeasurement A = pp.A;
      A.ops.pop_back();
      o = orthogonalize_sub(A, pp.psi);
      j = to_json(o);
      j["bounds"] = json::array({to_json(upper_bound_report("orthogonalize.submeasurement", o.dist_P, o.bound))});
    }
    return j;
  });
  json r{{"method", method}, {"instances", items}};
  if (method != "naimark") {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& it : items)
      for (const auto& b : it["bounds"]) worst = std::min(worst, b["margin"].get<double>());
    r["min_margin"] = num(worst);
  } else {
    double worst = 0;
    for (const auto& it : items) worst = std::max(worst, it["statistics_error"].get<double>());
    r["max_statistics_error"] = num(worst);
  }
  return r;
}

// ---- soundness-report

json cmd_soundness(const RunConfig& rc, std::uint64_t seed) {
  TestParams P = params_of(rc.cfg);
  Loaded L = strategy_of(rc, P, seed);
  QuantumStrategy s = as_quantum(L.strategy);
  int k = get<int>(rc.cfg, "k", std::max(1, P.m * P.d));
  if (k < P.m * P.d) throw ConfigError("k must be at least m d");
  json r{{"strategy", {{"type", type_name(L.strategy)}, {"source", L.source}}}, {"k", k}};
  r["goodness"] = to_json(failure_probabilities(s));
  r["main"] = to_json(main_theorem_witness(s, k));
  bool projective = s.symmetric;
  for (const auto& A : s.roles[0].points) projective = projective && is_projective(A, 1e-8);
  if (projective) r["points_commutativity"] = {{"bounds", json::array({to_json(points_commutativity(s))})}};
  int vac = 0;
  for (const auto& b : r["main"]["bounds"]) vac += b["vacuous"].get<bool>();
  r["vacuous_bounds"] = vac;
  return r;
}

// ---- spectrum

json cmd_spectrum(const RunConfig& rc, std::uint64_t seed) {
  TestParams P = params_of(rc.cfg);
  HypercubeGraph G = hypercube(P.F, P.m);
  json r{{"spectrum", to_json(verify_spectrum(G))}};
  int batch = get<int>(rc.cfg, "variance_batch", 10);
  int dim = get<int>(rc.cfg, "dim", 3);
  auto items = parallel_map(batch, rc.workers, [&](std::size_t i) -> json {
    std::mt19937_64 rng(instance_seed(seed, i));
    std::vector<Mat> A;
    for (std::uint64_t u = 0; u < G.M; ++u) A.push_back(random_povm(dim, 2, rng)[0]);
    Mat psi = from_vector(random_unit_vector(dim * dim, rng), dim, dim);
    double loc = local_variance(G, A, psi), glob = global_variance(G, A, psi);
    return json{{"local", num(loc)}, {"global", num(glob)}, {"margin", num(P.m * loc - glob)}};
  });
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& it : items) worst = std::min(worst, it["margin"].get<double>());
  r["variance"] = {{"instances", items}, {"min_margin", batch ? num(worst) : json(nullptr)}};
  return r;
}

// ---- sdp

json solution_json(const SdpInstance& inst, double tol) {
  SdpSolution sol = solve(inst, tol);
  json j = to_json(sol);
  bool diagonal = true;
  for (const auto& a : inst.A) diagonal = diagonal && (a - Mat(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-14;
  if (diagonal) j["oracle_error"] = num((sol.Z - diagonal_oracle(inst)).cwiseAbs().maxCoeff());
  return j;
}

json cmd_sdp(const RunConfig& rc, std::uint64_t seed) {
  double tol = get<double>(rc.cfg.value("tolerances", json::object()), "sdp", 1e-11);
  if (rc.cfg.contains("strategy")) {
    TestParams P = params_of(rc.cfg);
    Loaded L = strategy_of(rc, P, seed);
    return json{{"strategy", {{"type", type_name(L.strategy)}, {"source", L.source}}},
                {"solution", solution_json(build_instance(as_quantum(L.strategy)), tol)}};
  }
  int batch = get<int>(rc.cfg, "batch", 5);
  int dim = get<int>(rc.cfg, "dim", 4);
  int outcomes = get<int>(rc.cfg, "outcomes", 3);
  bool commuting = get<bool>(rc.cfg, "commuting", false);
  auto items = parallel_map(batch, rc.workers, [&](std::size_t i) -> json {
    std::mt19937_64 rng(instance_seed(seed, i));
    std::vector<Mat> A;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int g = 0; g < outcomes; ++g) {
      if (commuting) {
        Mat a = Mat::Zero(dim, dim);
        for (int j = 0; j < dim; ++j) a(j, j) = unif(rng);
        A.push_back(a);
      } else {
        A.push_back(random_psd(dim, dim, rng) / static_cast<double>(dim));
      }
    }
    return solution_json(make_instance(A), tol);
  });
  double gap = 0, slack = 0;
  for (const auto& it : items) {
    gap = std::max(gap, it["gap"].get<double>());
    slack = std::max(slack, it["slackness"].get<double>());
  }
  return json{{"instances", items}, {"max_gap", num(gap)}, {"max_slackness", num(slack)}};
}

// ---- paste

json cmd_paste(const RunConfig& rc, std::uint64_t seed) {
  TestParams slice = params_of(rc.cfg);
  const Field& F = slice.F;
  int m = slice.m, d = slice.d, q = F.q();
  int k = get<int>(rc.cfg, "k", std::min(q, d + 2));
  double theta = get<double>(rc.cfg, "theta", 0.5);
  int D = get<int>(rc.cfg, "seeds", 2);
  double eta = get<double>(rc.cfg, "eta", 0.0);
  if (k < d + 1 || k > q) throw ConfigError("k must satisfy d+1 <= k <= q");
  TestParams P1 = slice;
  P1.m = m + 1;
  std::mt19937_64 rng(seed);
  auto seeds = random_seeds(P1, D, rng);
  QuantumStrategy s = honest_quantum(P1, seeds);
  if (eta > 0) s = perturb(s, eta, rng);
  auto G = seed_slices(F, m, d, seeds);
  auto Ghat = complete_slices(G);
  PastingParams pp{k, true, get<std::uint64_t>(rc.cfg, "samples", 4096), seed};

  json r{{"k", k}, {"seeds", D}, {"eta", num(eta)}};
  r["tv"] = to_json(tv_distance_bound_check(q, k));
  std::uint64_t n_tuples = 1;
  for (int i = 0; i < k; ++i) n_tuples *= q;
  if (n_tuples > 100000) throw GuardExceeded("paste: q^k exceeds 1e5 coordinate tuples");
  auto els = F.elements();
  double tele = 0;
  std::vector<FieldElement> xs(k, F.zero());
  for (std::uint64_t idx = 0; idx < n_tuples; ++idx) {
    std::uint64_t v = idx;
    for (int i = k - 1; i >= 0; --i) {
      xs[i] = els[v % q];
      v /= q;
    }
    Mat tot = sandwich_total(Ghat, xs);
    tele = std::max(tele, (tot - Mat::Identity(tot.rows(), tot.cols())).cwiseAbs().maxCoeff());
  }
  r["telescoping_residual"] = num(tele);
  PastedMeasurement pm = pasted_measurement(F, m, d, G, pp);
  r["pasted"] = {{"tuples", pm.tuples}, {"exact_average", pm.exact}, {"excess", num(pm.excess)}};
  double interp = 0;
  for (std::size_t h = 0; h < pm.H.size(); ++h) {
    Mat want = Mat::Zero(D, D);
    for (int i = 0; i < D; ++i)
      if (poly_index(seeds[i], q) == h) want(i, i) = 1.0;
    interp = std::max(interp, (pm.H[h] - want).cwiseAbs().maxCoeff());
  }
  r["pasted"]["honest_interpolation_error"] = num(interp);
  r["report"] = to_json(pasting_report(s, G, pp));
  Mat Gavg = Mat::Zero(D, D);
  for (const auto& g : G) Gavg += g.total() / static_cast<double>(q);
  if (k >= 2.0 * d / theta)
    r["chernoff"] = to_json(chernoff_completeness_check(Gavg, s.psi, k, d, theta));
  else
    r["chernoff"] = {{"skipped", "k < 2d/theta"}};
  return r;
}

}  // namespace

json run_command(const RunConfig& rc) {
  std::uint64_t seed = get<std::uint64_t>(rc.cfg, "seed", 0);
  json result;
  try {
    if (rc.command == "run-test") result = cmd_run_test(rc, seed);
    else if (rc.command == "round-povm") result = cmd_round_povm(rc, seed);
    else if (rc.command == "soundness-report") result = cmd_soundness(rc, seed);
    else if (rc.command == "spectrum") result = cmd_spectrum(rc, seed);
    else if (rc.command == "sdp") result = cmd_sdp(rc, seed);
    else if (rc.command == "paste") result = cmd_paste(rc, seed);
    else throw ConfigError("unknown command '" + rc.command + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  json cfg = rc.cfg;
  cfg.erase("out");
  return json{{"command", rc.command}, {"config", cfg}, {"version", kLibraryVersion}, {"result", result}};
}

}  // namespace lidtest::cli
