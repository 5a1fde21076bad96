#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "lidtest/strategies.hpp"

namespace lidtest {

/// Strategy files are JSON documents:
///   {"type": "classical" | "randomized" | "quantum", "params": {...}, ...}
/// Field elements are coefficient lists [c_0, ..., c_{t-1}]; a bare integer is
/// accepted on input as the packed value. Matrices are {"rows", "cols",
/// "data": [[re, im], ...]} in row-major order. Measurement outcomes are keyed
/// by their label index and omitted when zero.
using AnyStrategy = std::variant<ClassicalStrategy, RandomizedStrategy, QuantumStrategy>;

nlohmann::json field_to_json(const Field& F);
Field field_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const TestParams& P);
TestParams params_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Mat& x);
Mat matrix_from_json(const nlohmann::json& j);

nlohmann::json strategy_to_json(const AnyStrategy& s);
/// Parses and validates; throws StrategyInvalid on any malformed or invalid content.
AnyStrategy strategy_from_json(const nlohmann::json& j);

AnyStrategy load_strategy(const std::string& path);
void save_strategy(const std::string& path, const AnyStrategy& s);

}  // namespace lidtest
