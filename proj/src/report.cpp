#include "lidtest/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace lidtest {

json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json rational(const Rational& r) {
  return json{{"exact", r.str()}, {"value", num(static_cast<double>(r))}};
}

json to_json(const TestParams& p) {
  json w = json::array();
  for (const auto& x : p.weights) w.push_back(x.str());
  return json{{"q", p.q()}, {"m", p.m}, {"d", p.d}, {"weights", w}};
}

json to_json(const Goodness& g) {
  return json{{"eps", num(g.eps)}, {"delta", num(g.delta)}, {"gamma", num(g.gamma)}};
}

json to_json(const ExactGoodness& g) {
  return json{{"eps", rational(g.eps)}, {"delta", rational(g.delta)}, {"gamma", rational(g.gamma)}};
}

json to_json(const McEstimate& e) {
  return json{{"failure", to_json(e.failure)},
              {"stderr", to_json(e.stderr_)},
              {"rounds", {{"axis", e.rounds[0]}, {"selfcons", e.rounds[1]}, {"diag", e.rounds[2]}}}};
}

json to_json(const BoundReport& b) {
  json j{{"id", b.id},
         {"measured", num(b.measured)},
         {"bound", num(b.bound)},
         {"margin", num(b.margin)},
         {"kind", b.kind == BoundKind::Upper ? "upper" : "lower"},
         {"vacuous", b.vacuous}};
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

json to_json(const OrthogonalizeResult& r) {
  return json{{"zeta", num(r.zeta)},
              {"delta", num(r.delta)},
              {"dist_R", num(r.dist_R)},
              {"dist_Q", num(r.dist_Q)},
              {"q_completeness", num(r.q_completeness)},
              {"dist_PQ", num(r.dist_PQ)},
              {"dist_P", num(r.dist_P)},
              {"projectivity", num(r.projectivity)},
              {"bound", num(r.bound)},
              {"zeta_flag", r.zeta_flag},
              {"defective_svd", r.defective_svd},
              {"submeasurement_case", r.submeasurement_case}};
}

json to_json(const SdpSolution& s) {
  return json{{"primal", num(s.primal)},
              {"dual", num(s.dual)},
              {"gap", num(s.gap)},
              {"primal_residual", num(s.primal_residual)},
              {"dual_residual", num(s.dual_residual)},
              {"slackness", num(s.slackness)},
              {"iterations", s.iterations},
              {"converged", s.converged},
              {"projection_preserved", s.projection_preserved}};
}

json to_json(const SpectrumCheck& c) {
  return json{{"eigen_residual", num(c.eigen_residual)},
              {"gram_residual", num(c.gram_residual)},
              {"reconstruction_residual", num(c.reconstruction_residual)},
              {"lambda2", num(c.lambda2)},
              {"lambda2_expected", num(c.lambda2_expected)}};
}

json to_json(const PointsVarianceReport& r) {
  return json{{"goodness", to_json(r.goodness)},
              {"bounds", json::array({to_json(upper_bound_report("points_variance.generalize_b", r.generalize_b,
                                                                   r.generalize_b_bound)),
                                        to_json(upper_bound_report("points_variance.local", r.local, r.local_bound)),
                                        to_json(upper_bound_report("points_variance.global", r.global,
                                                                   r.global_bound))})}};
}

json to_json(const ImproveReport& r) {
  json bounds = json::array();
  bounds.push_back(to_json(lower_bound_report("improve.completeness", r.completeness, (1.0 - r.nu) - r.zeta)));
  bounds.push_back(to_json(upper_bound_report("improve.consistency", r.a_consistency, r.zeta)));
  bounds.push_back(to_json(upper_bound_report(r.projective ? "improve.self_distance" : "improve.ssc_deficit",
                                              r.ssc_deficit, r.zeta)));
  bounds.push_back(to_json(upper_bound_report("improve.boundedness", r.boundedness, r.zeta)));
  bounds.push_back(to_json(lower_bound_report("improve.helper.completeness", r.completeness, (1.0 - r.nu) - r.zeta_hat)));
  bounds.push_back(to_json(upper_bound_report("improve.helper.consistency", r.a_consistency, r.zeta_hat)));
  bounds.push_back(to_json(upper_bound_report("improve.helper.ssc_deficit", r.ssc_deficit, r.zeta_hat)));
  bounds.push_back(to_json(upper_bound_report("improve.helper.boundedness", r.boundedness_helper, r.zeta_hat)));
  return json{{"goodness", to_json(r.goodness)},
              {"nu", num(r.nu)},
              {"zeta", num(r.zeta)},
              {"zeta_hat", num(r.zeta_hat)},
              {"z_dominance", num(r.z_dominance)},
              {"submeasurement_excess", num(r.submeasurement_excess)},
              {"projective", r.projective},
              {"projectivity", num(r.projectivity)},
              {"bounds", bounds}};
}

json to_json(const SliceHypotheses& h) {
  return json{{"kappa", num(h.kappa)},
              {"consistency", num(h.consistency)},
              {"self", num(h.self)},
              {"bounded", num(h.bounded)},
              {"zeta", num(h.zeta)}};
}

json to_json(const PastingReport& r) {
  json bounds = json::array();
  bounds.push_back(to_json(upper_bound_report("pasting.sigma", r.consistency, r.sigma)));
  bounds.push_back(to_json(upper_bound_report("pasting.nu6", r.h_b, r.nu6)));
  bounds.push_back(to_json(upper_bound_report("pasting.nu7", r.over_all, r.nu7)));
  bounds.push_back(to_json(upper_bound_report("pasting.nu8", r.to_g, r.nu8)));
  return json{{"goodness", to_json(r.goodness)},
              {"hypotheses",
               {{"kappa", num(r.kappa)},
                {"consistency", num(r.zeta_consistency)},
                {"self", num(r.zeta_self)},
                {"bounded", num(r.zeta_bounded)},
                {"zeta", num(r.zeta)}}},
              {"nu", num(r.nu)},
              {"h_completeness", num(r.h_completeness)},
              {"excess", num(r.excess)},
              {"theorem_regime", r.regime},
              {"bounds", bounds}};
}

json to_json(const ChernoffReport& r) {
  return json{{"kappa", num(r.kappa)},
              {"commutator", num(r.commutator)},
              {"min_eig", num(r.min_eig)},
              {"max_eig", num(r.max_eig)},
              {"bounds", json::array({to_json(lower_bound_report("pasting.chernoff", r.measured, r.bound))})}};
}

json to_json(const TvCheck& t) {
  return json{{"exact", rational(t.exact)},
              {"collision_bound", rational(t.collision_bound)},
              {"square_bound", rational(t.square_bound)}};
}

json to_json(const GCommutativity& g) {
  return json{{"hypotheses", to_json(g.hypotheses)}, {"bounds", json::array({to_json(g.raw), to_json(g.evaluated)})}};
}

json to_json(const MainWitness& w) {
  json bounds = json::array();
  for (const auto& b : w.reports) bounds.push_back(to_json(b));
  return json{{"pipeline", w.pipeline}, {"failure", num(w.failure)}, {"bounds", bounds}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

namespace {

std::string cell(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
  return v.dump();
}

bool is_bound(const json& j) {
  return j.is_object() && j.contains("id") && j.contains("measured") && j.contains("bound") && j.contains("margin");
}

void collect_bounds(const json& j, const std::string& path, std::vector<std::pair<std::string, json>>& out) {
  if (is_bound(j)) {
    out.emplace_back(path, j);
    return;
  }
  if (j.is_object())
    for (const auto& [k, v] : j.items()) collect_bounds(v, path.empty() ? k : path + "." + k, out);
  else if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) collect_bounds(j[i], path + "[" + std::to_string(i) + "]", out);
}

void collect_leaves(const json& j, const std::string& path, std::vector<std::pair<std::string, json>>& out) {
  if (j.is_object())
    for (const auto& [k, v] : j.items()) collect_leaves(v, path.empty() ? k : path + "." + k, out);
  else if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], path + "[" + std::to_string(i) + "]", out);
  else
    out.emplace_back(path, j);
}

}  // namespace

std::string to_csv(const json& j) {
  std::ostringstream os;
  std::vector<std::pair<std::string, json>> rows;
  collect_bounds(j, "", rows);
  if (!rows.empty()) {
    os << "path,id,measured,bound,margin,kind,vacuous\n";
    for (const auto& [path, b] : rows)
      os << cell(path) << ',' << cell(b["id"]) << ',' << cell(b["measured"]) << ',' << cell(b["bound"]) << ','
         << cell(b["margin"]) << ',' << cell(b["kind"]) << ',' << cell(b["vacuous"]) << '\n';
    return os.str();
  }
  collect_leaves(j, "", rows);
  os << "path,value\n";
  for (const auto& [path, v] : rows) os << cell(path) << ',' << cell(v) << '\n';
  return os.str();
}

}  // namespace lidtest
