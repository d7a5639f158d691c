#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "madelab/core/grid.hpp"
#include "madelab/core/params.hpp"
#include "madelab/core/potential.hpp"

namespace madelab::cli {

/// Validation failure; `path` is the offending key, e.g. "run.stride".
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& reason)
      : Error(path + ": " + reason), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Family { QStochastic, PStochastic, WaveFunction, Ensemble, Mixture };

struct GaussianShape {
  Point q0{};
  Point p0{};
  double sigma = 1.0;
  double weight = 1.0;
  /// Quadratic action coefficient (S gains chirp * |q - q0|^2 / 2).
  double chirp = 0.0;
};

struct ScenarioConfig {
  int dims = 1;
  double extent = 40.0;
  int points = 256;
  PhysicalParams params;

  std::string potential = "free";
  double omega = 1.0;
  Point center{};
  Point force{};

  Family family = Family::WaveFunction;
  std::vector<GaussianShape> shapes;
  std::size_t ensemble_size = 10000;

  double dt = 1e-3;
  int steps = 100;
  int stride = 10;

  std::vector<std::string> observables;
  bool marginals = false;
  bool wigner = false;
  std::vector<Point> trajectories;
  std::uint64_t seed = 0;

  /// The raw text the config was parsed from; hashed into the report.
  std::string source;

  GridSpec grid() const;
  PotentialSpec potential_spec() const;
};

std::string family_name(Family f);
/// Names accepted in outputs.observables.
const std::vector<std::string>& known_observables();

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// YAML text of a built-in scenario, or nullopt.
std::optional<std::string> builtin_scenario(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace madelab::cli
