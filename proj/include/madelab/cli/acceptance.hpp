#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace madelab::cli {

struct CriterionResult {
  int id;
  std::string name;
  double measured;
  double tolerance;
  /// Measured value satisfies the tolerance (ignoring the time budget).
  bool within_tolerance;
  double seconds;
  double budget_seconds;
  std::string detail;

  bool passed() const { return within_tolerance && seconds < budget_seconds; }
  std::string line() const;
};

struct AcceptanceOptions {
  /// Criterion whose oracle uses hbar * 1.1 (harness self-test).
  std::optional<int> inject_hbar_error;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

const std::vector<std::string>& acceptance_suites();
/// Criterion ids of a suite; throws InvalidArgument for unknown names.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            const AcceptanceOptions& opts = {});

}  // namespace madelab::cli
