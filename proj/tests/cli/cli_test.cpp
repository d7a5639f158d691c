#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::path(MADELAB_TEST_WORK);

int run(const std::string& args) {
  const std::string cmd = std::string(MADELAB_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

Csv read_csv(const fs::path& p) {
  std::ifstream in(p);
  Csv c;
  std::string line, cell;
  std::getline(in, line);
  std::stringstream hs(line);
  while (std::getline(hs, cell, ',')) c.header.push_back(cell);
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    c.rows.push_back(row);
  }
  return c;
}

std::string scenario(const std::string& name) { return std::string(MADELAB_SCENARIOS) + "/" + name + ".yaml"; }

}  // namespace

TEST_CASE("free-gaussian sigma_q follows analytic spreading") {
  const auto dir = kWork / "free";
  fs::remove_all(dir);
  REQUIRE(run("--quiet run " + scenario("free-gaussian") + " --out " + dir.string()) == 0);
  const Csv c = read_csv(dir / "observables.csv");
  const int t = c.column("time"), s = c.column("sigma_q_Q");
  REQUIRE(t == 0);
  REQUIRE(s > 0);
  REQUIRE(c.rows.size() == 21);
  double worst = 0.0;
  for (const auto& row : c.rows) {
    const double exact = std::sqrt(1 + std::pow(row[t] / 2, 2));
    worst = std::max(worst, std::abs(row[s] - exact) / exact);
  }
  CHECK(worst < 1e-6);
  CHECK(fs::exists(dir / "marginals_position.csv"));
  CHECK(fs::exists(dir / "marginals_momentum.csv"));
  const auto rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["abort"].is_null());
  CHECK(rep["config_sha256"].get<std::string>().size() == 64);
}

TEST_CASE("same config twice gives byte-identical CSV outputs") {
  const auto a = kWork / "det_a", b = kWork / "det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  for (const auto& name : {"bohm-ensemble", "two-packet-mixture"}) {
    CAPTURE(name);
    REQUIRE(run("--quiet run " + scenario(name) + " --out " + a.string()) == 0);
    REQUIRE(run("--quiet run " + scenario(name) + " --out " + b.string()) == 0);
    int compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
      ++compared;
    }
    CHECK(compared >= 2);
  }
  // A different seed changes the sampled ensemble.
  REQUIRE(run("--quiet --seed 8 run " + scenario("bohm-ensemble") + " --out " + b.string()) == 0);
  CHECK(slurp(a / "observables.csv") != slurp(b / "observables.csv"));
}

TEST_CASE("stride that does not divide steps is a validation error") {
  const auto cfg = kWork / "bad_stride.yaml";
  fs::create_directories(kWork);
  std::ofstream(cfg) << "initial: {family: wavefunction}\nrun: {dt: 0.01, steps: 10, stride: 3}\n";
  CHECK(run("run " + cfg.string() + " --out " + (kWork / "bad").string()) == 2);
  const std::string cmd = std::string(MADELAB_EXE) + " run " + cfg.string() + " --out " + (kWork / "bad").string() +
                          " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[256];
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  pclose(pipe);
  CHECK(out.find("run.stride") != std::string::npos);
  std::ofstream(cfg) << "initial: {family: wavefunction}\nrun: {dt: 0.01, steps: 10, strid: 5}\n";
  CHECK(run("run " + cfg.string() + " --out " + (kWork / "bad").string()) == 2);
}

TEST_CASE("caustic surfaces as a solver abort with a timestamp") {
  const auto dir = kWork / "caustic";
  fs::remove_all(dir);
  CHECK(run("--quiet run " + scenario("caustic-focus") + " --out " + dir.string()) == 3);
  const auto rep = nlohmann::json::parse(slurp(dir / "report.json"));
  REQUIRE(rep["abort"].is_object());
  CHECK(rep["abort"]["kind"] == "caustic");
  const double t = rep["abort"]["time"];
  CHECK(t > 1.5);
  CHECK(t <= 2.0);
  CHECK(fs::exists(dir / "observables.csv"));
}

TEST_CASE("injected hbar error fails only its criterion") {
  const std::string cmd = std::string(MADELAB_EXE) + " accept quantum --inject-hbar-error 2";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[1024];
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 4);
  std::istringstream lines(out);
  std::string line;
  int pass = 0, fail = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("[FAIL]", 0) == 0) {
      ++fail;
      CHECK(line.find("free-packet spreading") != std::string::npos);
    } else if (line.rfind("[PASS]", 0) == 0) {
      ++pass;
    }
  }
  CHECK(fail == 1);
  CHECK(pass == 3);
}

TEST_CASE("unknown suite and unknown built-in are rejected") {
  CHECK(run("accept everything") == 2);
  CHECK(run("run no-such-scenario --out " + (kWork / "none").string()) == 2);
}
