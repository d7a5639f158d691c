#include "madelab/cli/scenario.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>

#include "json.hpp"
#include "madelab/bridge/madelung.hpp"
#include "madelab/classical/ensemble.hpp"
#include "madelab/classical/field_evolution.hpp"
#include "madelab/classical/p_family.hpp"
#include "madelab/core/diagnostics.hpp"
#include "madelab/observables/expectation.hpp"
#include "madelab/observables/marginals.hpp"
#include "madelab/observables/mixture.hpp"
#include "madelab/quantum/split_step.hpp"
#include "madelab/wigner/wigner.hpp"

#ifndef MADELAB_VERSION
#define MADELAB_VERSION "dev"
#endif

namespace madelab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string tool_version() { return MADELAB_VERSION; }

namespace {

int axis_of(const std::string& name) { return name.size() > 2 && name.substr(name.size() - 2) == "_y" ? 1 : 0; }
std::string base_of(const std::string& name) { return axis_of(name) ? name.substr(0, name.size() - 2) : name; }

struct Drift {
  std::string name;
  double tolerance;
  bool relative;
  double first = NAN;
  double worst = 0.0;

  void sample(double v) {
    if (std::isnan(first)) first = v;
    const double scale = relative ? std::max(std::abs(first), 1.0) : 1.0;
    worst = std::max(worst, std::abs(v - first) / scale);
  }
  InvariantCheck check() const { return {name, worst, tolerance, worst <= tolerance}; }
};

// One evolving representation: the classical (_C) or the quantum (_Q) side.
class Side {
 public:
  virtual ~Side() = default;
  virtual void advance(int steps) = 0;
  virtual double time() const = 0;
  virtual bool supports(const std::string& obs) const = 0;
  virtual double value(const std::string& obs) const = 0;
  virtual std::optional<MarginalPair> marginals() const { return std::nullopt; }
  virtual std::optional<WignerField> wigner() const { return std::nullopt; }
  virtual void sample_invariants() = 0;
  virtual std::vector<InvariantCheck> invariants() const = 0;
};

ActionField shape_action(const GridSpec& g, const GaussianShape& s) {
  Point linear{}, curv{};
  double c0 = 0.0;
  for (int a = 0; a < g.dims(); ++a) {
    linear[a] = s.p0[a] - s.chirp * s.q0[a];
    curv[a] = s.chirp;
    c0 += 0.5 * s.chirp * s.q0[a] * s.q0[a];
  }
  return ActionField::polynomial(g, c0, linear, curv);
}

QStochasticState shape_state(const GridSpec& g, const GaussianShape& s) {
  return QStochasticState(gaussian_density(g, s.q0, s.sigma), shape_action(g, s));
}

Observable observable_for(const std::string& name, const GridSpec& g) {
  const int axis = axis_of(name);
  const std::string b = base_of(name);
  if (b == "q") return Observable::position_mean(axis);
  if (b == "p") return Observable::momentum_mean(axis);
  if (b == "p2") return Observable::momentum_square(axis);
  if (b == "energy") return Observable::energy();
  if (b == "lz") return Observable::angular_momentum_z();
  if (b == "lz2") return Observable::angular_momentum_z_square();
  if (b == "q2") return Observable::position_square(g, axis);
  throw InvalidArgument("no operator for " + name);
}

class FieldSide : public Side {
 public:
  FieldSide(QStochasticState st, PotentialSpec pot, PhysicalParams p, double dt)
      : st_(std::move(st)), pot_(std::move(pot)), p_(p), dt_(dt),
        p_grid_(st_.grid().momentum_grid(p.hbar)) {}
  void advance(int steps) override { st_ = evolve_q_state(st_, pot_, p_, dt_, steps); }
  double time() const override { return st_.time; }
  bool supports(const std::string&) const override { return true; }
  double value(const std::string& obs) const override {
    if (obs == "norm") return integrate(st_.n);
    if (obs == "sigma_q") return position_spread(st_, 0);
    if (obs == "sigma_p") return momentum_spread(st_, p_, 0);
    return expect_classical(st_, pot_, p_, observable_for(obs, st_.grid()));
  }
  std::optional<MarginalPair> marginals() const override {
    try {
      return marginals_classical(st_, p_grid_);
    } catch (const MarginalOverflow& e) {
      warn("marginal-overflow", std::string(e.what()) + " at t=" + std::to_string(st_.time));
      return MarginalPair{st_.n, RealField::constant(p_grid_, NAN)};
    }
  }
  void sample_invariants() override {
    mass_.sample(integrate(st_.n));
    energy_.sample(expect_classical(st_, pot_, p_, Observable::energy(), false));
  }
  std::vector<InvariantCheck> invariants() const override { return {mass_.check(), energy_.check()}; }

 private:
  QStochasticState st_;
  PotentialSpec pot_;
  PhysicalParams p_;
  double dt_;
  GridSpec p_grid_;
  Drift mass_{"mass_drift_C", 1e-10, false};
  Drift energy_{"hj_energy_drift_C", 1e-6, true};
};

class PFieldSide : public Side {
 public:
  PFieldSide(PStochasticState st, PotentialSpec pot, PhysicalParams p, double dt)
      : st_(std::move(st)), pot_(std::move(pot)), p_(p), dt_(dt) {}
  void advance(int steps) override { st_ = evolve_p_state(st_, pot_, p_, dt_, steps); }
  double time() const override { return st_.time; }
  bool supports(const std::string& obs) const override {
    const auto b = base_of(obs);
    return b == "q" || b == "p" || b == "energy" || b == "norm";
  }
  double value(const std::string& obs) const override {
    const int axis = axis_of(obs);
    const auto b = base_of(obs);
    if (b == "q") return p_state_mean_position(st_, axis);
    if (b == "p") return p_state_mean_momentum(st_, axis);
    if (b == "energy") return p_state_energy(st_, pot_, p_);
    return integrate(st_.n);
  }
  std::optional<MarginalPair> marginals() const override {
    // Only the momentum marginal is a field here.
    return MarginalPair{RealField::constant(st_.grid(), NAN), st_.n};
  }
  void sample_invariants() override {
    mass_.sample(integrate(st_.n));
    energy_.sample(p_state_energy(st_, pot_, p_));
  }
  std::vector<InvariantCheck> invariants() const override { return {mass_.check(), energy_.check()}; }

 private:
  PStochasticState st_;
  PotentialSpec pot_;
  PhysicalParams p_;
  double dt_;
  Drift mass_{"mass_drift_C", 1e-10, false};
  Drift energy_{"energy_drift_C", 1e-6, true};
};

class EnsembleSide : public Side {
 public:
  EnsembleSide(ParticleEnsemble e, const GridSpec& g, PotentialSpec pot, PhysicalParams p, double dt)
      : e_(std::move(e)), g_(g), p_grid_(g.momentum_grid(p.hbar)), pot_(std::move(pot)), p_(p), dt_(dt) {}
  void advance(int steps) override { e_ = liouville_evolve_ensemble(e_, pot_, p_, dt_, steps); }
  double time() const override { return e_.time; }
  bool supports(const std::string&) const override { return true; }
  double value(const std::string& obs) const override {
    const int axis = axis_of(obs);
    const auto b = base_of(obs);
    if (b == "norm") return weights();
    if (b == "energy") return mean([&](const Particle& x) { return particle_energy(x, e_.dims, pot_, p_, e_.time); });
    if (b == "q") return e_.mean_q(axis);
    if (b == "p") return e_.mean_p(axis);
    if (b == "p2") return mean([&](const Particle& x) { return x.p[axis] * x.p[axis]; });
    auto lz = [](const Particle& x) { return x.q[0] * x.p[1] - x.q[1] * x.p[0]; };
    if (b == "lz") return mean(lz);
    if (b == "lz2") return mean([&](const Particle& x) { return lz(x) * lz(x); });
    if (b == "sigma_q") {
      const double m = e_.mean_q(0);
      return std::sqrt(mean([&](const Particle& x) { return (x.q[0] - m) * (x.q[0] - m); }));
    }
    if (b == "sigma_p") {
      const double m = e_.mean_p(0);
      return std::sqrt(mean([&](const Particle& x) { return (x.p[0] - m) * (x.p[0] - m); }));
    }
    throw InvalidArgument("no ensemble estimator for " + obs);
  }
  std::optional<MarginalPair> marginals() const override {
    return MarginalPair{deposit(g_, [](const Particle& x) { return x.q; }),
                        deposit(p_grid_, [](const Particle& x) { return x.p; })};
  }
  void sample_invariants() override {
    weight_.sample(weights());
    energy_.sample(value("energy"));
  }
  std::vector<InvariantCheck> invariants() const override { return {weight_.check(), energy_.check()}; }

 private:
  template <class F>
  double mean(F f) const {
    double s = 0.0;
    for (const auto& x : e_.points) s += x.w * f(x);
    return s;
  }
  double weights() const {
    return mean([](const Particle&) { return 1.0; });
  }
  // Nearest-node histogram normalised as a density; points off the grid are dropped.
  template <class F>
  RealField deposit(const GridSpec& g, F coord) const {
    std::vector<double> out(g.size(), 0.0);
    for (const auto& x : e_.points) {
      const Point c = coord(x);
      std::array<int, 2> idx{0, 0};
      bool inside = true;
      for (int a = 0; a < g.dims(); ++a) {
        idx[a] = static_cast<int>(std::lround((c[a] - g.origin(a)) / g.spacing(a)));
        inside = inside && idx[a] >= 0 && idx[a] < g.points(a);
      }
      if (inside) out[g.flatten(idx[0], idx[1])] += x.w / g.cell_volume();
    }
    return RealField(g, std::move(out));
  }

  ParticleEnsemble e_;
  GridSpec g_;
  GridSpec p_grid_;
  PotentialSpec pot_;
  PhysicalParams p_;
  double dt_;
  Drift weight_{"weight_sum_drift_C", 1e-12, false};
  Drift energy_{"energy_drift_C", 1e-4, true};
};

class WaveSide : public Side {
 public:
  WaveSide(std::vector<MixtureComponent> comps, PotentialSpec pot, double dt)
      : comps_(std::move(comps)), pot_(std::move(pot)), dt_(dt) {}
  void advance(int steps) override {
    for (auto& c : comps_) c.psi = split_step_propagate(c.psi, pot_, dt_, steps);
  }
  double time() const override { return comps_.front().psi.time; }
  bool supports(const std::string&) const override { return true; }
  double value(const std::string& obs) const override {
    if (obs == "norm") {
      double s = 0.0;
      for (const auto& c : comps_) s += c.weight * c.psi.norm_squared();
      return s;
    }
    const DensityMatrix D{comps_};
    const GridSpec& g = comps_.front().psi.grid();
    if (obs == "sigma_q") {
      const double m = mixture_expectation(D, pot_, Observable::position_mean(0));
      return std::sqrt(mixture_expectation(D, pot_, Observable::position_square(g, 0)) - m * m);
    }
    if (obs == "sigma_p") {
      const double m = mixture_expectation(D, pot_, Observable::momentum_mean(0));
      return std::sqrt(mixture_expectation(D, pot_, Observable::momentum_square(0)) - m * m);
    }
    return mixture_expectation(D, pot_, observable_for(obs, g));
  }
  std::optional<MarginalPair> marginals() const override {
    std::optional<MarginalPair> out;
    for (const auto& c : comps_) {
      auto m = marginals_quantum(c.psi);
      m.mu *= c.weight;
      m.nu *= c.weight;
      if (!out)
        out = std::move(m);
      else {
        out->mu = out->mu + m.mu;
        out->nu = out->nu + m.nu;
      }
    }
    return out;
  }
  std::optional<WignerField> wigner() const override {
    std::optional<WignerField> out;
    for (const auto& c : comps_) {
      auto w = wigner_transform(c.psi);
      for (auto& v : w.values) v *= c.weight;
      if (!out)
        out = std::move(w);
      else
        for (std::size_t i = 0; i < w.values.size(); ++i) out->values[i] += w.values[i];
    }
    return out;
  }
  void sample_invariants() override {
    norm_.sample(value("norm"));
    energy_.sample(value("energy"));
  }
  std::vector<InvariantCheck> invariants() const override { return {norm_.check(), energy_.check()}; }

 private:
  std::vector<MixtureComponent> comps_;
  PotentialSpec pot_;
  double dt_;
  Drift norm_{"norm_drift_Q", 1e-10, false};
  Drift energy_{"energy_drift_Q", 1e-4, true};
};

std::vector<std::string> grid_columns(const GridSpec& g, const std::string& base) {
  if (g.dims() == 1) return {base};
  return {base + "_x", base + "_y"};
}

void append_marginals(CsvTable& table, int snapshot, double t, const RealField& c, const RealField* q) {
  const GridSpec& g = c.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<double> row{double(snapshot), t};
    const Point x = g.node(i);
    for (int a = 0; a < g.dims(); ++a) row.push_back(x[a]);
    row.push_back(c[i]);
    if (q) row.push_back((*q)[i]);
    table.add_row(row);
  }
}

void write_wigner(const WignerField& w, const std::string& dir, int snapshot, double t, RunReport& report) {
  const std::string stem = "wigner_" + std::to_string(snapshot);
  std::string body;
  const int nq = w.q_grid.points(0), np = w.p_grid.points(0);
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      if (j) body += ',';
      body += format_number(w.at(i, j));
    }
    body += '\n';
  }
  write_file_atomic(dir + "/" + stem + ".csv", body);
  json side{{"rows", "q"},
            {"columns", "p"},
            {"nq", nq},
            {"np", np},
            {"q_origin", w.q_grid.origin(0)},
            {"q_spacing", w.q_grid.spacing(0)},
            {"p_origin", w.p_grid.origin(0)},
            {"p_spacing", w.p_grid.spacing(0)},
            {"time", t},
            {"hbar", w.params.hbar}};
  write_file_atomic(dir + "/" + stem + ".json", side.dump(2) + "\n");
  report.files.push_back(stem + ".csv");
  report.files.push_back(stem + ".json");
}

}  // namespace

std::string RunReport::to_json() const {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json inv = json::array();
  for (const auto& c : invariants)
    inv.push_back({{"name", c.name}, {"value", num(c.value)}, {"tolerance", c.tolerance}, {"pass", c.passed}});
  json j{{"version", version},
         {"config_sha256", config_sha256},
         {"seed", seed},
         {"wall_seconds", wall_seconds},
         {"snapshots", observables.rows().size()},
         {"columns", observables.header()},
         {"invariants", inv},
         {"warnings", warnings},
         {"files", files}};
  j["abort"] = abort ? json{{"kind", abort->kind}, {"time", abort->time}, {"message", abort->message}} : json(nullptr);
  return j.dump(2) + "\n";
}

RunReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  RunReport report;
  report.version = tool_version();
  report.config_sha256 = sha256_hex(cfg.source);
  report.seed = cfg.seed;

  const GridSpec g = cfg.grid();
  const PotentialSpec pot = cfg.potential_spec();
  const PhysicalParams& p = cfg.params;

  std::unique_ptr<Side> classical, quantum;
  double t_now = 0.0;
  WarningCapture capture;
  auto fail = [&](const std::string& kind, double t, const std::string& msg) {
    report.abort = SolverAbort{kind, t, msg};
  };

  try {
    const GaussianShape& s0 = cfg.shapes.front();
    switch (cfg.family) {
      case Family::QStochastic: {
        const auto st = shape_state(g, s0);
        classical = std::make_unique<FieldSide>(st, pot, p, cfg.dt);
        quantum = std::make_unique<WaveSide>(std::vector<MixtureComponent>{{1.0, madelung_forward(st, p)}}, pot, cfg.dt);
        break;
      }
      case Family::WaveFunction:
        quantum = std::make_unique<WaveSide>(
            std::vector<MixtureComponent>{{1.0, madelung_forward(shape_state(g, s0), p)}}, pot, cfg.dt);
        break;
      case Family::Mixture: {
        std::vector<MixtureComponent> comps;
        for (const auto& s : cfg.shapes) comps.push_back({s.weight, madelung_forward(shape_state(g, s), p)});
        quantum = std::make_unique<WaveSide>(std::move(comps), pot, cfg.dt);
        break;
      }
      case Family::Ensemble: {
        auto e = sample_ensemble_from_state(shape_state(g, s0), cfg.ensemble_size, cfg.seed);
        e.box = g;
        classical = std::make_unique<EnsembleSide>(std::move(e), g, pot, p, cfg.dt);
        break;
      }
      case Family::PStochastic: {
        // The grid is read as a momentum grid: n(p) centred on p0, grad_p S = q0.
        GaussianShape conj;
        conj.q0 = s0.p0;
        conj.p0 = s0.q0;
        conj.sigma = s0.sigma;
        const auto q = shape_state(g, conj);
        classical = std::make_unique<PFieldSide>(PStochasticState(q.n, q.S), pot, p, cfg.dt);
        break;
      }
    }
  } catch (const Error& e) {
    throw ConfigError("initial", e.what());
  }

  std::vector<std::string> header{"time"};
  std::vector<std::pair<Side*, std::string>> columns;
  for (const auto& name : cfg.observables) {
    if (classical && classical->supports(name)) {
      header.push_back(name + "_C");
      columns.emplace_back(classical.get(), name);
    }
    if (quantum && quantum->supports(name)) {
      header.push_back(name + "_Q");
      columns.emplace_back(quantum.get(), name);
    }
  }
  report.observables = CsvTable(header);

  std::vector<std::string> qcols = {"snapshot", "time"}, pcols = qcols;
  for (const auto& c : grid_columns(g, "q")) qcols.push_back(c);
  for (const auto& c : grid_columns(g, "p")) pcols.push_back(c);
  if (classical) {
    qcols.push_back("mu_C");
    pcols.push_back("nu_C");
  }
  if (quantum) {
    qcols.push_back("mu_Q");
    pcols.push_back("nu_Q");
  }
  CsvTable mu_table(qcols), nu_table(pcols);

  auto snapshot = [&](int k) {
    std::vector<double> row{t_now};
    for (const auto& [side, name] : columns) row.push_back(side->value(name));
    report.observables.add_row(row);
    for (Side* s : {classical.get(), quantum.get()})
      if (s) s->sample_invariants();
    if (cfg.marginals) {
      std::optional<MarginalPair> mc, mq;
      if (classical) mc = classical->marginals();
      if (quantum) mq = quantum->marginals();
      const MarginalPair& first = mc ? *mc : *mq;
      if (mc && mq) {
        append_marginals(mu_table, k, t_now, mc->mu, &mq->mu);
        append_marginals(nu_table, k, t_now, mc->nu, &mq->nu);
      } else {
        append_marginals(mu_table, k, t_now, first.mu, nullptr);
        append_marginals(nu_table, k, t_now, first.nu, nullptr);
      }
    }
    if (cfg.wigner && quantum)
      if (auto w = quantum->wigner()) write_wigner(*w, out_dir, k, t_now, report);
  };

  const int snapshots = cfg.steps / cfg.stride;
  try {
    snapshot(0);
    for (int k = 1; k <= snapshots; ++k) {
      if (classical) classical->advance(cfg.stride);
      if (quantum) quantum->advance(cfg.stride);
      t_now = k * cfg.stride * cfg.dt;
      snapshot(k);
    }
  } catch (const CausticError& e) {
    fail("caustic", e.time(), e.what());
  } catch (const NodeError& e) {
    fail("node", t_now, e.what());
  } catch (const ConvergenceError& e) {
    fail("convergence", t_now, e.what());
  } catch (const Error& e) {
    fail("solver", t_now, e.what());
  }

  if (!cfg.trajectories.empty() && !report.abort) {
    CsvTable traj([&] {
      std::vector<std::string> h{"id", "time"};
      for (const auto& c : grid_columns(g, "q")) h.push_back(c);
      for (const auto& c : grid_columns(g, "p")) h.push_back(c);
      return h;
    }());
    try {
      const auto b = classical_trajectories(shape_state(g, cfg.shapes.front()), cfg.trajectories, pot, p,
                                            cfg.steps * cfg.dt, cfg.dt);
      for (std::size_t j = 0; j < b.trajectories.size(); ++j) {
        const auto& tr = b.trajectories[j];
        for (std::size_t k = 0; k < tr.times.size(); k += cfg.stride) {
          std::vector<double> row{double(j), tr.times[k]};
          for (int a = 0; a < g.dims(); ++a) row.push_back(tr.q[k][a]);
          for (int a = 0; a < g.dims(); ++a) row.push_back(tr.p[k][a]);
          traj.add_row(row);
        }
      }
      write_file_atomic(out_dir + "/trajectories.csv", traj.str());
      report.files.push_back("trajectories.csv");
    } catch (const CausticError& e) {
      fail("caustic", e.time(), std::string("trajectories: ") + e.what());
    }
  }

  write_file_atomic(out_dir + "/observables.csv", report.observables.str());
  report.files.insert(report.files.begin(), "observables.csv");
  if (cfg.marginals) {
    write_file_atomic(out_dir + "/marginals_position.csv", mu_table.str());
    write_file_atomic(out_dir + "/marginals_momentum.csv", nu_table.str());
    report.files.push_back("marginals_position.csv");
    report.files.push_back("marginals_momentum.csv");
  }
  for (Side* s : {classical.get(), quantum.get()})
    if (s)
      for (const auto& c : s->invariants()) report.invariants.push_back(c);
  for (const auto& w : capture.warnings()) report.warnings.push_back(w.code + ": " + w.message);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file_atomic(out_dir + "/report.json", report.to_json());
  return report;
}

RunReport run_scenario(const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed) {
  ScenarioConfig cfg;
  if (fs::exists(config))
    cfg = load_config(config);
  else if (auto text = builtin_scenario(config))
    cfg = parse_config(*text);
  else
    throw ConfigError("<file>", "no config file or built-in scenario named '" + config + "'");
  if (seed) cfg.seed = *seed;
  return run_scenario(cfg, out_dir);
}

}  // namespace madelab::cli
