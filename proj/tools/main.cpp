#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "scenario.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTaskFailure = 2;

/// Logs go to stderr so reports on stdout stay clean; FERMIFOLD_LOG picks the level.
void configure_logging() {
  auto logger = spdlog::stderr_logger_mt("fermifold");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("FERMIFOLD_LOG");
  if (env == nullptr) return;
  const std::string level(env);
  if (level == "error") spdlog::set_level(spdlog::level::err);
  else if (level == "warn") spdlog::set_level(spdlog::level::warn);
  else if (level == "info") spdlog::set_level(spdlog::level::info);
  else if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::warn("ignoring FERMIFOLD_LOG={}; expected error, warn, info or debug", level);
}

int run_command(const std::string& path, const std::string& output, unsigned jobs, std::uint64_t seed) {
  using fermifold::cli::json;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open scenario file '" << path << "'\n";
    return kExitUsage;
  }
  json scenario;
  try {
    scenario = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cerr << "error: scenario '" << path << "' is not valid JSON: " << e.what() << "\n";
    return kExitUsage;
  }
  fermifold::cli::RunOutcome outcome;
  try {
    outcome = fermifold::cli::run_scenario(scenario, {jobs, seed});
  } catch (const fermifold::cli::SchemaError& e) {
    std::cerr << "error: schema violation: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string text = outcome.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "error: cannot write report to '" << output << "'\n";
      return kExitUsage;
    }
  }
  for (const auto& task : outcome.report.at("tasks")) {
    if (task.at("status") == "error") std::cerr << "error: " << task.at("error").at("message").get<std::string>() << "\n";
  }
  return outcome.all_ok ? kExitOk : kExitTaskFailure;
}

int expr_command(const std::string& text) {
  using namespace fermifold;
  try {
    const auto e = parse(text);
    const auto nf = normal_order(e);
    const auto v = vev(nf.expr);
    std::cout << "input:     " << to_string(e) << "\n"
              << "canonical: " << to_string(nf.expr) << "\n"
              << "vev:       " << format_real(v.real());
    if (v.imag() != 0.0) std::cout << (v.imag() < 0 ? " - " : " + ") << format_real(std::abs(v.imag())) << "i";
    std::cout << "\n"
              << "rewrites:  " << nf.steps << "\n";
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const RewriteLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTaskFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Fermionic Fock-space operators, fields and exterior calculus"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string output_path;
  unsigned jobs = 1;
  std::uint64_t run_seed = 1;
  auto* run = app.add_subcommand("run", "Execute a JSON scenario and emit a JSON report");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("-o,--output", output_path, "Write the report here instead of standard output");
  run->add_option("--jobs", jobs, "Maximum number of tasks executed concurrently")->check(CLI::PositiveNumber);
  run->add_option("--seed", run_seed, "Seed for sampled oracle checks");

  bool quick = false;
  std::uint64_t selftest_seed = 1;
  auto* selftest = app.add_subcommand("selftest", "Check the invariant suite on seeded samples");
  selftest->add_flag("--quick", quick, "Restrict to K <= 6 modes and D <= 4 dimensions");
  selftest->add_option("--seed", selftest_seed, "Sampling seed");

  std::string expr_text;
  auto* expr = app.add_subcommand("expr", "Parse, normal-order and evaluate the vacuum expectation of an expression");
  expr->add_option("expression", expr_text, "Expression in the operator DSL")->required();

  auto* grammar = app.add_subcommand("grammar", "Print the operator DSL grammar (EBNF)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return run_command(scenario_path, output_path, jobs, run_seed);
    if (*selftest) {
      const auto outcome = fermifold::cli::run_selftest({quick, selftest_seed});
      std::cout << outcome.report;
      return outcome.all_passed ? kExitOk : kExitTaskFailure;
    }
    if (*expr) return expr_command(expr_text);
    if (*grammar) {
      std::cout << fermifold::kGrammar;
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTaskFailure;
  }
  return kExitUsage;
}
