#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "lidtest/report.hpp"
#include "lidtest/strategy_io.hpp"

using namespace lidtest;

namespace {

TestParams params(int q, int m, int d) {
  TestParams P;
  P.F = Field(params_for_order(q));
  P.m = m;
  P.d = d;
  return P;
}

}  // namespace

TEST(Io, NumRounding) {
  EXPECT_EQ(num(0.1 + 0.2).dump(), "0.3");
  EXPECT_EQ(num(1.0 / 3).dump(), "0.333333333333");
  EXPECT_EQ(num(std::nan("")), "nan");
  EXPECT_EQ(num(-1.0 / 0.0), "-inf");
}

TEST(Io, ClassicalRoundTrip) {
  TestParams P = params(4, 2, 1);
  std::mt19937_64 rng(1);
  AnyStrategy s = random_classical(P, rng);
  AnyStrategy t = strategy_from_json(json::parse(strategy_to_json(s).dump()));
  const auto& a = std::get<ClassicalStrategy>(s);
  const auto& b = std::get<ClassicalStrategy>(t);
  EXPECT_EQ(failure_probabilities(a).eps, failure_probabilities(b).eps);
  EXPECT_EQ(a.roles[1].points, b.roles[1].points);
  EXPECT_EQ(a.roles[0].axis, b.roles[0].axis);
  EXPECT_EQ(a.roles[0].diag, b.roles[0].diag);
}

TEST(Io, QuantumRoundTripThroughFile) {
  TestParams P = params(3, 1, 1);
  std::mt19937_64 rng(2);
  QuantumStrategy s = perturb(honest_quantum(P, {poly_from_index(P.F, 1, 1, 3), poly_from_index(P.F, 1, 1, 7)}), 0.1, rng);
  auto path = (std::filesystem::temp_directory_path() / "lidtest_io_test.json").string();
  save_strategy(path, s);
  auto t = std::get<QuantumStrategy>(load_strategy(path));
  std::filesystem::remove(path);
  EXPECT_TRUE(t.symmetric);
  EXPECT_LT((t.psi - s.psi).cwiseAbs().maxCoeff(), 1e-15);
  Goodness a = failure_probabilities(s), b = failure_probabilities(t);
  EXPECT_NEAR(a.eps, b.eps, 1e-14);
  EXPECT_NEAR(a.gamma, b.gamma, 1e-14);
}

TEST(Io, InvalidStrategyRejected) {
  TestParams P = params(3, 1, 1);
  std::mt19937_64 rng(3);
  json j = strategy_to_json(AnyStrategy{random_classical(P, rng)});
  j["roles"]["A"]["points"].erase(0);
  EXPECT_THROW(strategy_from_json(j), StrategyInvalid);
  json k = strategy_to_json(AnyStrategy{random_classical(P, rng)});
  k["type"] = "bogus";
  EXPECT_THROW(strategy_from_json(k), StrategyInvalid);
  EXPECT_THROW(load_strategy("/nonexistent/strategy.json"), StrategyInvalid);
}

TEST(Io, FieldJson) {
  Field F = field_from_json(json{{"p", 3}, {"t", 2}, {"modulus", {2, 2, 1}}});
  EXPECT_EQ(F.q(), 9);
  EXPECT_EQ(field_from_json(json{{"q", 8}}).q(), 8);
  EXPECT_EQ(field_from_json(field_to_json(F)).params().modulus, F.params().modulus);
}

TEST(Io, CsvAndDump) {
  json j{{"b", num(0.5)}, {"a", {{"c", 1}}}};
  EXPECT_EQ(dump_json(j), "{\n  \"a\": {\n    \"c\": 1\n  },\n  \"b\": 0.5\n}\n");
  json r{{"bounds", json::array({to_json(upper_bound_report("x.y", 0.25, 0.5))})}};
  std::string csv = to_csv(r);
  EXPECT_NE(csv.find("path,id,measured,bound,margin,kind,vacuous"), std::string::npos);
  EXPECT_NE(csv.find("x.y"), std::string::npos);
}
