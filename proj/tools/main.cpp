#include <cstdint>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "madelab/cli/acceptance.hpp"
#include "madelab/cli/scenario.hpp"
#include "madelab/core/diagnostics.hpp"

using namespace madelab;
using namespace madelab::cli;

int main(int argc, char** argv) {
  CLI::App app{"madelab: stochastic-action classical/quantum bridge"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  bool quiet = false;
  std::optional<std::uint64_t> seed;
  app.add_flag("--quiet", quiet, "Suppress progress and warnings");
  app.add_option("--seed", seed, "Override the config seed");

  auto* run = app.add_subcommand("run", "Run a scenario config (file path or built-in name)");
  std::string config, out_dir = "out";
  run->add_option("config", config, "Scenario YAML or built-in name")->required();
  run->add_option("--out", out_dir, "Output directory");

  auto* accept = app.add_subcommand("accept", "Run an acceptance suite");
  std::string suite = "all";
  std::optional<int> inject;
  accept->add_option("suite", suite, "classical | bridge | quantum | identity | wigner | all");
  accept->add_option("--inject-hbar-error", inject, "Perturb hbar by 10% in one criterion's oracle")
      ->check(CLI::Range(1, 12));

  app.add_subcommand("list", "List built-in scenarios");

  CLI11_PARSE(app, argc, argv);
  set_warnings_quiet(quiet);

  if (app.got_subcommand("list")) {
    for (const auto& n : builtin_names()) std::cout << n << "\n";
    return kOk;
  }

  if (run->parsed()) {
    try {
      const auto report = run_scenario(config, out_dir, seed);
      if (!quiet) {
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& c : report.invariants)
          std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << " = " << c.value << " (tol " << c.tolerance << ")\n";
        std::cout << report.observables.rows().size() << " snapshots written to " << out_dir << "\n";
      }
      if (report.abort) {
        std::cerr << "solver abort (" << report.abort->kind << ") at t=" << report.abort->time << ": "
                  << report.abort->message << "\n";
        return kSolverAbort;
      }
      return kOk;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kValidation;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kValidation;
    }
  }

  try {
    suite_criteria(suite);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kValidation;
  }
  AcceptanceOptions opts;
  opts.inject_hbar_error = inject;
  opts.on_result = [&](const CriterionResult& r) { std::cout << r.line() << std::endl; };
  const auto results = run_acceptance(suite, opts);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed();
  if (!quiet) std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed ? kAcceptanceFailure : kOk;
}
