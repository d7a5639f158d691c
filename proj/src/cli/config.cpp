#include "madelab/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace madelab::cli {

namespace {

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

// Rejects keys outside `allowed` at `path`.
void only_keys(const YAML::Node& node, const std::string& path, std::set<std::string> allowed) {
  if (!node.IsMap()) throw ConfigError(path.empty() ? "<root>" : path, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key");
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ConfigError(path, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path, "cannot read '" + node.Scalar() + "'");
  }
}

template <class T>
void read(const YAML::Node& parent, const std::string& path, const char* key, T& out) {
  if (const auto n = parent[key]) out = scalar<T>(n, join(path, key));
}

Point read_point(const YAML::Node& node, const std::string& path, int dims) {
  Point p{};
  if (node.IsScalar()) {
    if (dims != 1) throw ConfigError(path, "expected a list of " + std::to_string(dims) + " numbers");
    p[0] = scalar<double>(node, path);
    return p;
  }
  if (!node.IsSequence() || static_cast<int>(node.size()) != dims)
    throw ConfigError(path, "expected a list of " + std::to_string(dims) + " numbers");
  for (int a = 0; a < dims; ++a) p[a] = scalar<double>(node[a], path + "[" + std::to_string(a) + "]");
  return p;
}

GaussianShape read_gaussian(const YAML::Node& node, const std::string& path, int dims,
                            std::set<std::string> extra) {
  std::set<std::string> keys{"q0", "p0", "sigma", "chirp"};
  keys.insert(extra.begin(), extra.end());
  only_keys(node, path, keys);
  GaussianShape g;
  if (node["q0"]) g.q0 = read_point(node["q0"], join(path, "q0"), dims);
  if (node["p0"]) g.p0 = read_point(node["p0"], join(path, "p0"), dims);
  read(node, path, "sigma", g.sigma);
  read(node, path, "chirp", g.chirp);
  if (!(g.sigma > 0)) throw ConfigError(join(path, "sigma"), "must be positive");
  return g;
}

Family parse_family(const std::string& s, const std::string& path) {
  static const std::map<std::string, Family> names{{"q-stochastic", Family::QStochastic},
                                                   {"p-stochastic", Family::PStochastic},
                                                   {"wavefunction", Family::WaveFunction},
                                                   {"ensemble", Family::Ensemble},
                                                   {"mixture", Family::Mixture}};
  const auto it = names.find(s);
  if (it == names.end())
    throw ConfigError(path, "unknown family '" + s + "' (q-stochastic, p-stochastic, wavefunction, ensemble, mixture)");
  return it->second;
}

void parse_initial(const YAML::Node& node, ScenarioConfig& c) {
  const std::string path = "initial";
  if (!node) throw ConfigError(path, "missing");
  if (!node.IsMap()) throw ConfigError(path, "expected a mapping");
  if (!node["family"]) throw ConfigError("initial.family", "missing");
  c.family = parse_family(scalar<std::string>(node["family"], "initial.family"), "initial.family");
  if (c.family == Family::Mixture) {
    only_keys(node, path, {"family", "components"});
    const auto comps = node["components"];
    if (!comps || !comps.IsSequence() || comps.size() == 0)
      throw ConfigError("initial.components", "expected a non-empty list");
    double total = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string p = "initial.components[" + std::to_string(i) + "]";
      auto g = read_gaussian(comps[i], p, c.dims, {"weight"});
      read(comps[i], p, "weight", g.weight);
      if (!(g.weight > 0)) throw ConfigError(join(p, "weight"), "must be positive");
      total += g.weight;
      c.shapes.push_back(g);
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("initial.components", "weights must sum to 1");
    return;
  }
  std::set<std::string> extra{"family", "shape"};
  if (c.family == Family::Ensemble) extra.insert("count");
  c.shapes.push_back(read_gaussian(node, path, c.dims, extra));
  if (node["shape"] && scalar<std::string>(node["shape"], "initial.shape") != "gaussian")
    throw ConfigError("initial.shape", "only 'gaussian' is built in");
  if (node["count"]) {
    const auto n = scalar<long long>(node["count"], "initial.count");
    if (n <= 0) throw ConfigError("initial.count", "must be positive");
    c.ensemble_size = static_cast<std::size_t>(n);
  }
}

}  // namespace

GridSpec ScenarioConfig::grid() const { return GridSpec::centered(dims, extent, points); }

PotentialSpec ScenarioConfig::potential_spec() const {
  if (potential == "harmonic") return PotentialSpec::harmonic(omega, params.mass, center);
  if (potential == "uniform-field") return PotentialSpec::uniform_field(force);
  return PotentialSpec::free();
}

std::string family_name(Family f) {
  switch (f) {
    case Family::QStochastic: return "q-stochastic";
    case Family::PStochastic: return "p-stochastic";
    case Family::WaveFunction: return "wavefunction";
    case Family::Ensemble: return "ensemble";
    case Family::Mixture: return "mixture";
  }
  return "?";
}

const std::vector<std::string>& known_observables() {
  static const std::vector<std::string> names{"q", "q_y", "p", "p_y", "p2", "p2_y", "energy",
                                              "lz", "lz2", "sigma_q", "sigma_p", "norm"};
  return names;
}

ScenarioConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", std::string("YAML syntax: ") + e.what());
  }
  only_keys(root, "", {"grid", "params", "potential", "initial", "run", "outputs", "seed"});
  ScenarioConfig c;
  c.source = text;

  if (const auto g = root["grid"]) {
    only_keys(g, "grid", {"dims", "extent", "points"});
    read(g, "grid", "dims", c.dims);
    read(g, "grid", "extent", c.extent);
    read(g, "grid", "points", c.points);
  }
  if (c.dims != 1 && c.dims != 2) throw ConfigError("grid.dims", "must be 1 or 2");
  if (!(c.extent > 0)) throw ConfigError("grid.extent", "must be positive");
  if (c.points < 4) throw ConfigError("grid.points", "must be at least 4");

  if (const auto p = root["params"]) {
    only_keys(p, "params", {"hbar", "mass", "charge", "beta"});
    read(p, "params", "hbar", c.params.hbar);
    read(p, "params", "mass", c.params.mass);
    read(p, "params", "charge", c.params.charge);
    read(p, "params", "beta", c.params.beta);
  }
  if (!(c.params.hbar > 0)) throw ConfigError("params.hbar", "must be positive");
  if (!(c.params.mass > 0)) throw ConfigError("params.mass", "must be positive");
  if (!(c.params.beta >= 0)) throw ConfigError("params.beta", "must be non-negative");

  if (const auto v = root["potential"]) {
    only_keys(v, "potential", {"kind", "omega", "center", "force"});
    read(v, "potential", "kind", c.potential);
    if (c.potential != "free" && c.potential != "harmonic" && c.potential != "uniform-field")
      throw ConfigError("potential.kind", "unknown potential '" + c.potential + "' (free, harmonic, uniform-field)");
    read(v, "potential", "omega", c.omega);
    if (v["center"]) c.center = read_point(v["center"], "potential.center", c.dims);
    if (v["force"]) c.force = read_point(v["force"], "potential.force", c.dims);
    if (c.potential == "harmonic" && !(c.omega > 0)) throw ConfigError("potential.omega", "must be positive");
  }

  parse_initial(root["initial"], c);

  if (const auto r = root["run"]) {
    only_keys(r, "run", {"dt", "steps", "stride"});
    read(r, "run", "dt", c.dt);
    read(r, "run", "steps", c.steps);
    read(r, "run", "stride", c.stride);
  }
  if (!(c.dt > 0)) throw ConfigError("run.dt", "must be positive");
  if (c.steps < 0) throw ConfigError("run.steps", "must be non-negative");
  if (c.stride <= 0) throw ConfigError("run.stride", "must be positive");
  if (c.steps % c.stride != 0)
    throw ConfigError("run.stride", "must divide run.steps (" + std::to_string(c.steps) + ")");

  c.observables = {"q", "p", "energy"};
  if (const auto o = root["outputs"]) {
    only_keys(o, "outputs", {"observables", "marginals", "wigner", "trajectories"});
    if (const auto list = o["observables"]) {
      if (!list.IsSequence()) throw ConfigError("outputs.observables", "expected a list");
      c.observables.clear();
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = "outputs.observables[" + std::to_string(i) + "]";
        const auto name = scalar<std::string>(list[i], p);
        const auto& known = known_observables();
        if (std::find(known.begin(), known.end(), name) == known.end())
          throw ConfigError(p, "unknown observable '" + name + "'");
        if (c.dims == 1 && (name == "q_y" || name == "p_y" || name == "p2_y" || name == "lz" || name == "lz2"))
          throw ConfigError(p, "'" + name + "' needs a 2D grid");
        c.observables.push_back(name);
      }
    }
    read(o, "outputs", "marginals", c.marginals);
    read(o, "outputs", "wigner", c.wigner);
    if (const auto t = o["trajectories"]) {
      if (!t.IsSequence()) throw ConfigError("outputs.trajectories", "expected a list of points");
      for (std::size_t i = 0; i < t.size(); ++i)
        c.trajectories.push_back(read_point(t[i], "outputs.trajectories[" + std::to_string(i) + "]", c.dims));
    }
  }
  if (c.wigner && c.dims != 1) throw ConfigError("outputs.wigner", "Wigner dumps are 1D only");
  if (c.wigner && (c.family == Family::PStochastic || c.family == Family::Ensemble))
    throw ConfigError("outputs.wigner", "needs a wave-function state (wavefunction, q-stochastic or mixture)");
  if (!c.trajectories.empty() && c.family != Family::QStochastic && c.family != Family::WaveFunction)
    throw ConfigError("outputs.trajectories", "needs a field state (q-stochastic or wavefunction)");
  if (c.family == Family::PStochastic) {
    for (std::size_t i = 0; i < c.observables.size(); ++i) {
      const auto& n = c.observables[i];
      if (n != "q" && n != "q_y" && n != "p" && n != "p_y" && n != "energy" && n != "norm")
        throw ConfigError("outputs.observables[" + std::to_string(i) + "]",
                          "'" + n + "' is not available for p-stochastic states");
    }
  }
  if (c.family == Family::Mixture && c.params.beta != 0.0)
    throw ConfigError("params.beta", "mixtures evolve linearly; beta must be 0");

  if (const auto s = root["seed"]) c.seed = scalar<std::uint64_t>(s, "seed");
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

const std::map<std::string, std::string>& builtins() {
  static const std::map<std::string, std::string> table{
      {"free-gaussian", R"(# Free Gaussian packet spreading to twice its initial variance.
grid: {dims: 1, extent: 60, points: 512}
params: {hbar: 1, mass: 1, charge: 1, beta: 0}
potential: {kind: free}
initial: {family: wavefunction, q0: 0, p0: 0, sigma: 1}
run: {dt: 0.001, steps: 2000, stride: 100}
outputs:
  observables: [q, p, p2, energy, sigma_q, sigma_p, norm]
  marginals: true
seed: 1
)"},
      {"harmonic-coherent", R"(# Displaced oscillator ground state over one period.
grid: {dims: 1, extent: 24, points: 256}
params: {hbar: 1, mass: 1, charge: 1, beta: 0}
potential: {kind: harmonic, omega: 1}
initial: {family: wavefunction, q0: 1.5, p0: 0, sigma: 0.7071067811865476}
run: {dt: 0.001, steps: 6000, stride: 200}
outputs:
  observables: [q, p, energy, sigma_q, sigma_p]
  marginals: true
  wigner: true
seed: 1
)"},
      {"diverging-beam", R"(# Diverging classical field with its quantum image and three trajectories.
grid: {dims: 1, extent: 40, points: 256}
params: {hbar: 0.5, mass: 1, charge: 1, beta: 0}
potential: {kind: free}
initial: {family: q-stochastic, q0: 0, p0: 0.5, sigma: 1, chirp: 0.5}
run: {dt: 0.001, steps: 2000, stride: 200}
outputs:
  observables: [q, p, p2, energy, sigma_q, sigma_p, norm]
  marginals: true
  trajectories: [-1, 0, 1]
seed: 1
)"},
      {"caustic-focus", R"(# Converging classical field; the HJ solve aborts at the focus.
grid: {dims: 1, extent: 40, points: 256}
params: {hbar: 0.25, mass: 1, charge: 1, beta: 0}
potential: {kind: free}
initial: {family: q-stochastic, q0: 0, p0: 0, sigma: 2, chirp: -0.5}
run: {dt: 0.001, steps: 3000, stride: 100}
outputs:
  observables: [q, p, p2, sigma_q, sigma_p]
seed: 1
)"},
      {"bohm-ensemble", R"(# Point ensemble sampled from a Gaussian field in a harmonic trap.
grid: {dims: 1, extent: 30, points: 256}
params: {hbar: 1, mass: 1, charge: 1, beta: 0}
potential: {kind: harmonic, omega: 1}
initial: {family: ensemble, q0: 1, p0: 0.5, sigma: 1, count: 20000}
run: {dt: 0.001, steps: 2000, stride: 250}
outputs:
  observables: [q, p, p2, energy, sigma_q, sigma_p]
  marginals: true
seed: 7
)"},
      {"two-packet-mixture", R"(# Incoherent mixture of two opposite-moving packets.
grid: {dims: 1, extent: 40, points: 256}
params: {hbar: 1, mass: 1, charge: 1, beta: 0}
potential: {kind: free}
initial:
  family: mixture
  components:
    - {weight: 0.5, q0: -4, p0: 1, sigma: 1}
    - {weight: 0.5, q0: 4, p0: -1, sigma: 1}
run: {dt: 0.001, steps: 4000, stride: 500}
outputs:
  observables: [q, p, p2, energy, sigma_q, norm]
  marginals: true
  wigner: true
seed: 1
)"},
      {"p-family-harmonic", R"(# Conjugate family rotating in a harmonic trap, stopped before its caustic.
grid: {dims: 1, extent: 24, points: 256}
params: {hbar: 1, mass: 1, charge: 1, beta: 0}
potential: {kind: harmonic, omega: 1}
initial: {family: p-stochastic, q0: 0.8, p0: 0, sigma: 1}
run: {dt: 0.001, steps: 1200, stride: 120}
outputs:
  observables: [q, p, energy, norm]
seed: 1
)"},
      {"vortex-2d", R"(# 2D packet carrying angular momentum in an isotropic trap.
grid: {dims: 2, extent: 16, points: 64}
params: {hbar: 1, mass: 1, charge: 1, beta: 0}
potential: {kind: harmonic, omega: 1}
initial: {family: wavefunction, q0: [1, 0], p0: [0, 1], sigma: 0.7071067811865476}
run: {dt: 0.002, steps: 1000, stride: 100}
outputs:
  observables: [q, q_y, p, p_y, energy, lz, lz2, norm]
seed: 1
)"},
  };
  return table;
}

}  // namespace

std::optional<std::string> builtin_scenario(const std::string& name) {
  const auto it = builtins().find(name);
  if (it == builtins().end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& kv : builtins()) out.push_back(kv.first);
  return out;
}

}  // namespace madelab::cli
