#include "lidtest/strategy_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lidtest {

using nlohmann::json;

namespace {

json element_to_json(const Field& F, FieldElement x) { return F.coeffs(x); }

FieldElement element_from_json(const Field& F, const json& j) {
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v < 0 || v >= F.q()) throw StrategyInvalid("field element out of range");
    return F.elem(static_cast<std::uint32_t>(v));
  }
  return F.from_coeffs(j.get<std::vector<int>>());
}

json point_to_json(const Field& F, const Point& u) {
  json a = json::array();
  for (const auto& c : u.coords) a.push_back(element_to_json(F, c));
  return a;
}

Point point_from_json(const Field& F, const json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) throw StrategyInvalid("point has wrong length");
  Point u;
  for (const auto& c : j) u.coords.push_back(element_from_json(F, c));
  return u;
}

json unipoly_to_json(const Field& F, const UniPoly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs) a.push_back(element_to_json(F, c));
  return a;
}

UniPoly unipoly_from_json(const Field& F, const json& j, int bound) {
  if (!j.is_array() || j.empty() || static_cast<int>(j.size()) > bound + 1)
    throw StrategyInvalid("line answer has wrong length");
  UniPoly f = zero_unipoly(F, static_cast<int>(j.size()) - 1);
  for (std::size_t i = 0; i < j.size(); ++i) f.coeffs[i] = element_from_json(F, j[i]);
  return f;
}

json axis_line_json(const Field& F, const AxisLine& l) {
  return json{{"axis", l.axis}, {"base", point_to_json(F, l.base)}};
}

json diag_line_json(const Field& F, const DiagonalLine& l) {
  return json{{"base", point_to_json(F, l.base)}, {"dir", point_to_json(F, l.dir)}};
}

std::uint64_t axis_key_from(const Field& F, const json& j, int m) {
  int axis = j.at("axis").get<int>();
  if (axis < 0 || axis >= m) throw StrategyInvalid("axis index out of range");
  return axis_key(F, AxisLine{axis, point_from_json(F, j.at("base"), m)});
}

std::uint64_t diag_key_from(const Field& F, const json& j, int m) {
  DiagonalLine l = canonical_line(F, point_from_json(F, j.at("base"), m), point_from_json(F, j.at("dir"), m));
  return diag_key(F, l);
}

json table_to_json(const TestParams& P, const ClassicalTable& T) {
  const Field& F = P.F;
  json pts = json::array(), ax = json::array(), dg = json::array();
  for (std::uint64_t u = 0; u < T.points.size(); ++u)
    pts.push_back({{"u", point_to_json(F, point_from_index(F, P.m, u))}, {"answer", element_to_json(F, T.points[u])}});
  for (std::uint64_t k = 0; k < T.axis.size(); ++k)
    ax.push_back({{"line", axis_line_json(F, axis_from_key(F, P.m, k))}, {"answer", unipoly_to_json(F, T.axis[k])}});
  for (const auto& [k, f] : T.diag)
    dg.push_back({{"line", diag_line_json(F, diag_from_key(F, P.m, k))}, {"answer", unipoly_to_json(F, f)}});
  return json{{"points", pts}, {"axis", ax}, {"diag", dg}};
}

ClassicalTable table_from_json(const TestParams& P, const json& j) {
  const Field& F = P.F;
  std::uint64_t M = space_size(F, P.m);
  ClassicalTable T;
  T.points.assign(M, F.zero());
  std::vector<bool> seen(M, false);
  for (const auto& r : j.at("points")) {
    std::uint64_t u = point_index(F, point_from_json(F, r.at("u"), P.m));
    T.points[u] = element_from_json(F, r.at("answer"));
    seen[u] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw StrategyInvalid("points table incomplete");
  T.axis.assign(M * P.m, zero_unipoly(F, P.d));
  std::vector<bool> seen_ax(M * P.m, false);
  for (const auto& r : j.at("axis")) {
    std::uint64_t k = axis_key_from(F, r.at("line"), P.m);
    T.axis[k] = unipoly_from_json(F, r.at("answer"), P.d);
    seen_ax[k] = true;
  }
  if (std::find(seen_ax.begin(), seen_ax.end(), false) != seen_ax.end()) throw StrategyInvalid("axis table incomplete");
  for (const auto& r : j.at("diag")) {
    std::uint64_t k = diag_key_from(F, r.at("line"), P.m);
    DiagonalLine l = diag_from_key(F, P.m, k);
    T.diag[k] = unipoly_from_json(F, r.at("answer"), l.degenerate() ? 0 : P.m * P.d);
  }
  return T;
}

json measurement_to_json(const SubMeasurement& A) {
  json ops = json::object();
  for (std::size_t a = 0; a < A.size(); ++a)
    if (A[a].cwiseAbs().maxCoeff() > 0) ops[std::to_string(a)] = matrix_to_json(A[a]);
  return json{{"outcomes", A.size()}, {"ops", ops}};
}

SubMeasurement measurement_from_json(const json& j, std::size_t outcomes, int dim) {
  if (j.at("outcomes").get<std::size_t>() != outcomes) throw StrategyInvalid("measurement has wrong outcome count");
  SubMeasurement A;
  A.ops.assign(outcomes, Mat::Zero(dim, dim));
  for (const auto& [key, val] : j.at("ops").items()) {
    std::size_t a = std::stoul(key);
    if (a >= outcomes) throw StrategyInvalid("outcome label out of range");
    A[a] = matrix_from_json(val);
    if (A[a].rows() != dim || A[a].cols() != dim) throw StrategyInvalid("operator has wrong dimension");
  }
  return A;
}

json families_to_json(const TestParams& P, const RoleFamilies& R) {
  const Field& F = P.F;
  json pts = json::array(), ax = json::array(), dg = json::array();
  for (std::uint64_t u = 0; u < R.points.size(); ++u)
    pts.push_back({{"u", point_to_json(F, point_from_index(F, P.m, u))}, {"measurement", measurement_to_json(R.points[u])}});
  for (std::uint64_t k = 0; k < R.axis.size(); ++k)
    ax.push_back({{"line", axis_line_json(F, axis_from_key(F, P.m, k))}, {"measurement", measurement_to_json(R.axis[k])}});
  for (const auto& [k, A] : R.diag)
    dg.push_back({{"line", diag_line_json(F, diag_from_key(F, P.m, k))}, {"measurement", measurement_to_json(A)}});
  return json{{"points", pts}, {"axis", ax}, {"diag", dg}};
}

RoleFamilies families_from_json(const TestParams& P, const json& j, int dim) {
  const Field& F = P.F;
  int q = F.q();
  std::uint64_t M = space_size(F, P.m);
  std::size_t nax = unipoly_count(q, P.d), ndiag = unipoly_count(q, P.m * P.d);
  RoleFamilies R;
  R.points.assign(M, SubMeasurement{});
  for (const auto& r : j.at("points")) {
    std::uint64_t u = point_index(F, point_from_json(F, r.at("u"), P.m));
    R.points[u] = measurement_from_json(r.at("measurement"), q, dim);
  }
  R.axis.assign(M * P.m, SubMeasurement{});
  for (const auto& r : j.at("axis"))
    R.axis[axis_key_from(F, r.at("line"), P.m)] = measurement_from_json(r.at("measurement"), nax, dim);
  for (const auto& r : j.at("diag")) {
    std::uint64_t k = diag_key_from(F, r.at("line"), P.m);
    R.diag[k] = measurement_from_json(r.at("measurement"), diag_from_key(F, P.m, k).degenerate() ? q : ndiag, dim);
  }
  for (const auto& A : R.points)
    if (A.size() == 0) throw StrategyInvalid("points family incomplete");
  for (const auto& A : R.axis)
    if (A.size() == 0) throw StrategyInvalid("axis family incomplete");
  return R;
}

const char* kRoleNames[2] = {"A", "B"};

}  // namespace

json field_to_json(const Field& F) {
  return json{{"p", F.p()}, {"t", F.t()}, {"modulus", F.params().modulus}};
}

Field field_from_json(const json& j) {
  if (j.contains("q") && !j.contains("p")) return Field(params_for_order(j.at("q").get<int>()));
  FieldParams fp;
  fp.p = j.at("p").get<int>();
  fp.t = j.value("t", 1);
  fp.modulus = j.contains("modulus") ? j.at("modulus").get<std::vector<int>>() : default_modulus(fp.p, fp.t);
  return Field(fp);
}

json params_to_json(const TestParams& P) {
  json w = json::array();
  for (const auto& x : P.weights) w.push_back(x.str());
  return json{{"field", field_to_json(P.F)}, {"m", P.m}, {"d", P.d}, {"weights", w}};
}

TestParams params_from_json(const json& j) {
  TestParams P;
  P.F = field_from_json(j.at("field"));
  P.m = j.at("m").get<int>();
  P.d = j.at("d").get<int>();
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (!w.is_array() || w.size() != 3) throw DomainError("weights must have three entries");
    for (int i = 0; i < 3; ++i)
      P.weights[i] = w[i].is_string() ? Rational(w[i].get<std::string>()) : Rational(w[i].get<int>());
  }
  P.validate();
  return P;
}

json matrix_to_json(const Mat& x) {
  json data = json::array();
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) data.push_back({x(r, c).real(), x(r, c).imag()});
  return json{{"rows", x.rows()}, {"cols", x.cols()}, {"data", data}};
}

Mat matrix_from_json(const json& j) {
  Eigen::Index rows = j.at("rows").get<Eigen::Index>(), cols = j.at("cols").get<Eigen::Index>();
  const json& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols))
    throw StrategyInvalid("matrix data has wrong size");
  Mat x(rows, cols);
  for (Eigen::Index i = 0; i < rows * cols; ++i) {
    const json& e = data[static_cast<std::size_t>(i)];
    x(i / cols, i % cols) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return x;
}

json strategy_to_json(const AnyStrategy& any) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ClassicalStrategy>) {
          return json{{"type", "classical"},
                      {"params", params_to_json(s.params)},
                      {"roles", {{"A", table_to_json(s.params, s.roles[0])}, {"B", table_to_json(s.params, s.roles[1])}}}};
        } else if constexpr (std::is_same_v<T, RandomizedStrategy>) {
          json mix = json::array();
          for (const auto& [w, c] : s.mixture)
            mix.push_back({{"weight", w.str()},
                           {"roles", {{"A", table_to_json(s.params, c.roles[0])}, {"B", table_to_json(s.params, c.roles[1])}}}});
          return json{{"type", "randomized"}, {"params", params_to_json(s.params)}, {"mixture", mix}};
        } else {
          return json{{"type", "quantum"},
                      {"params", params_to_json(s.params)},
                      {"symmetric", s.symmetric},
                      {"psi", matrix_to_json(s.psi)},
                      {"roles", {{"A", families_to_json(s.params, s.roles[0])}, {"B", families_to_json(s.params, s.roles[1])}}}};
        }
      },
      any);
}

AnyStrategy strategy_from_json(const json& j) {
  try {
    std::string type = j.at("type").get<std::string>();
    TestParams P = params_from_json(j.at("params"));
    if (type == "classical") {
      ClassicalStrategy s{P, {table_from_json(P, j.at("roles").at("A")), table_from_json(P, j.at("roles").at("B"))}};
      validate(s);
      return s;
    }
    if (type == "randomized") {
      RandomizedStrategy s{P, {}};
      Rational total = 0;
      for (const auto& e : j.at("mixture")) {
        Rational w(e.at("weight").get<std::string>());
        if (w < 0) throw StrategyInvalid("negative mixture weight");
        ClassicalStrategy c{P, {table_from_json(P, e.at("roles").at("A")), table_from_json(P, e.at("roles").at("B"))}};
        validate(c);
        total += w;
        s.mixture.emplace_back(w, std::move(c));
      }
      if (total != 1) throw StrategyInvalid("mixture weights do not sum to 1");
      return s;
    }
    if (type == "quantum") {
      QuantumStrategy s;
      s.params = P;
      s.psi = matrix_from_json(j.at("psi"));
      s.symmetric = j.value("symmetric", false);
      for (int r = 0; r < 2; ++r)
        s.roles[r] = families_from_json(P, j.at("roles").at(kRoleNames[r]), s.dim(static_cast<Role>(r)));
      validate(s);
      return s;
    }
    throw StrategyInvalid("unknown strategy type " + type);
  } catch (const StrategyInvalid&) {
    throw;
  } catch (const std::exception& e) {
    throw StrategyInvalid(std::string("malformed strategy: ") + e.what());
  }
}

AnyStrategy load_strategy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StrategyInvalid("cannot open strategy file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw StrategyInvalid("strategy file is not valid JSON: " + std::string(e.what()));
  }
  return strategy_from_json(j);
}

void save_strategy(const std::string& path, const AnyStrategy& s) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write strategy file " + path);
  out << strategy_to_json(s).dump(1) << "\n";
}

}  // namespace lidtest
