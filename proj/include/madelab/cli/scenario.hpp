#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "madelab/cli/config.hpp"
#include "madelab/cli/csv.hpp"

namespace madelab::cli {

struct InvariantCheck {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

struct SolverAbort {
  std::string kind;  // "caustic", "node", "convergence", ...
  double time;
  std::string message;
};

struct RunReport {
  CsvTable observables{{}};
  std::vector<InvariantCheck> invariants;
  std::optional<SolverAbort> abort;
  std::vector<std::string> warnings;
  std::string config_sha256;
  std::string version;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> files;

  std::string to_json() const;
};

std::string sha256_hex(const std::string& bytes);
std::string tool_version();

/// Runs the scenario and writes observables.csv, marginal CSVs, Wigner
/// dumps and report.json into `out_dir` (created if needed).
RunReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);
/// `config` is a file path or the name of a built-in scenario.
RunReport run_scenario(const std::string& config, const std::string& out_dir,
                       std::optional<std::uint64_t> seed = std::nullopt);

enum ExitCode { kOk = 0, kValidation = 2, kSolverAbort = 3, kAcceptanceFailure = 4 };

}  // namespace madelab::cli
