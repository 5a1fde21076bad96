#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lidtest/diagnostics.hpp"
#include "lidtest/strategies.hpp"

namespace {

using lidtest::json;

int fail(int code, const std::string& kind, const std::string& msg) {
  std::cerr << json{{"error", kind}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
  return code;
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lidtest::cli::ConfigError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw lidtest::cli::ConfigError(std::string("config parse error: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low individual degree test toolkit"};
  app.require_subcommand(1);
  std::string config, out, format = "json";
  std::optional<std::uint64_t> seed;
  int workers = 1;
  const char* names[] = {"run-test", "round-povm", "soundness-report", "spectrum", "sdp", "paste"};
  const char* help[] = {"Evaluate a strategy against the test",
                        "Round approximate POVMs to projective measurements",
                        "Soundness diagnostics for a strategy",
                        "Hypercube spectrum and variance checks",
                        "Solve the self-improvement semidefinite program",
                        "Pasting diagnostics for seeded slice measurements"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config, "JSON config file")->required();
    sub->add_option("--seed", seed, "Overrides the config seed");
    sub->add_option("--out", out, "Write output here instead of stdout");
    sub->add_option("--workers", workers, "Parallel workers for batch commands")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    lidtest::cli::RunConfig rc;
    rc.command = app.get_subcommands().front()->get_name();
    rc.cfg = read_config(config);
    if (!rc.cfg.is_object()) throw lidtest::cli::ConfigError("config must be a JSON object");
    if (seed) rc.cfg["seed"] = *seed;
    rc.base_dir = std::filesystem::path(config).parent_path().string();
    rc.workers = workers;
    json result = lidtest::cli::run_command(rc);
    std::string text = format == "csv" ? lidtest::to_csv(result) : lidtest::dump_json(result);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw lidtest::cli::ConfigError("cannot write '" + out + "'");
      f << text;
    }
    return 0;
  } catch (const lidtest::cli::ConfigError& e) {
    return fail(2, "config", e.what());
  } catch (const lidtest::DomainError& e) {
    return fail(2, "domain", e.what());
  } catch (const lidtest::StrategyInvalid& e) {
    return fail(3, "strategy_invalid", e.what());
  } catch (const lidtest::GuardExceeded& e) {
    return fail(4, "guard_exceeded", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}
