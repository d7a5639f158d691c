#include <cmath>
#include <numbers>
#include <set>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "madelab/cli/acceptance.hpp"
#include "madelab/cli/config.hpp"
#include "madelab/cli/csv.hpp"
#include "madelab/cli/scenario.hpp"

using namespace madelab;
using namespace madelab::cli;

namespace {

const char* kMinimal = R"(
grid: {dims: 1, extent: 20, points: 64}
initial: {family: wavefunction, q0: 0, p0: 0.5, sigma: 1}
run: {dt: 0.01, steps: 20, stride: 5}
)";

std::string path_of_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("numbers print with round-trip precision") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
  CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
  CHECK(format_number(NAN) == "nan");
  CsvTable t({"a", "b"});
  t.add_row({1.0, 0.25});
  CHECK(t.str() == "a,b\n1,0.25\n");
  CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);
}

TEST_CASE("config parsing") {
  const auto c = parse_config(kMinimal);
  CHECK(c.dims == 1);
  CHECK(c.points == 64);
  CHECK(c.family == Family::WaveFunction);
  CHECK(c.shapes.front().p0[0] == 0.5);
  CHECK(c.steps == 20);
  CHECK(c.observables == std::vector<std::string>{"q", "p", "energy"});
}

TEST_CASE("config errors name the offending field") {
  const std::string base = kMinimal;
  CHECK(path_of_error(base + "extra: 1\n") == "extra");
  CHECK(path_of_error("grid: {dims: 1, extent: 20, points: 64, spacing: 2}\ninitial: {family: wavefunction}\n") ==
        "grid.spacing");
  CHECK(path_of_error("initial: {family: wavefunction}\nrun: {dt: 0.01, steps: 10, stride: 3}\n") == "run.stride");
  CHECK(path_of_error("initial: {family: wavefunction}\nrun: {dt: -1}\n") == "run.dt");
  CHECK(path_of_error("initial: {family: wavefunction}\npotential: {kind: morse}\n") == "potential.kind");
  CHECK(path_of_error("initial: {family: cat}\n") == "initial.family");
  CHECK(path_of_error("initial: {family: wavefunction, sigma: fat}\n") == "initial.sigma");
  CHECK(path_of_error("grid: {dims: 2, extent: 8, points: 16}\ninitial: {family: wavefunction, q0: 1}\n") ==
        "initial.q0");
  CHECK(path_of_error("initial: {family: wavefunction}\noutputs: {observables: [q, spin]}\n") ==
        "outputs.observables[1]");
  CHECK(path_of_error("initial: {family: wavefunction}\noutputs: {observables: [lz]}\n") == "outputs.observables[0]");
  CHECK(path_of_error("grid: {dims: 2, extent: 8, points: 16}\ninitial: {family: wavefunction}\noutputs: {wigner: true}\n") ==
        "outputs.wigner");
  CHECK(path_of_error("initial: {family: mixture, components: [{weight: 0.4}, {weight: 0.4}]}\n") ==
        "initial.components");
  CHECK(path_of_error("run: {dt: 0.1}\n") == "initial");
}

TEST_CASE("built-in scenarios parse") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_config(*builtin_scenario(name)));
  }
  CHECK_FALSE(builtin_scenario("nope").has_value());
}

TEST_CASE("sha256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("scenario run writes the declared artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "madelab_unit_run";
  std::filesystem::remove_all(dir);
  auto cfg = parse_config(std::string(kMinimal) +
                          "potential: {kind: harmonic, omega: 1}\n"
                          "outputs: {observables: [q, p, sigma_q, norm], marginals: true, wigner: true}\n");
  cfg.family = Family::QStochastic;
  const auto report = run_scenario(cfg, dir.string());
  CHECK_FALSE(report.abort.has_value());
  CHECK(report.observables.rows().size() == 5);
  CHECK(report.observables.header() ==
        std::vector<std::string>{"time", "q_C", "q_Q", "p_C", "p_Q", "sigma_q_C", "sigma_q_Q", "norm_C", "norm_Q"});
  for (const char* f : {"observables.csv", "marginals_position.csv", "marginals_momentum.csv", "wigner_0.csv",
                        "wigner_0.json", "wigner_4.csv", "report.json"})
    CHECK(std::filesystem::exists(dir / f));
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["config_sha256"] == sha256_hex(cfg.source));
  std::set<std::string> names;
  for (const auto& inv : j["invariants"]) {
    CHECK(names.insert(inv["name"].get<std::string>()).second);
    CHECK(inv["pass"].get<bool>());
  }
  CHECK(names.size() == 4);
  const auto side = nlohmann::json::parse(slurp(dir / "wigner_0.json"));
  CHECK(side["nq"] == 64);
  CHECK(side["np"] == 64);
  std::filesystem::remove_all(dir);
}

TEST_CASE("acceptance registry") {
  CHECK(suite_criteria("all").size() == 12);
  std::set<int> seen;
  for (const auto& s : acceptance_suites())
    if (s != "all")
      for (int id : suite_criteria(s)) CHECK(seen.insert(id).second);
  CHECK(seen.size() == 12);
  CHECK_THROWS_AS(suite_criteria("everything"), InvalidArgument);
}
