#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "test_support.hpp"
#include "wpsec/harness.hpp"

using namespace wpsec;
namespace fs = std::filesystem;

#ifndef WPSEC_CLI_PATH
#error "WPSEC_CLI_PATH must point at the command-line binary"
#endif

namespace {

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("wpsec_it_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(WPSEC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("both schemes on the fixture: recycling beats time switching") {
  for (const double eps : {0.001, 0.01, 0.05}) {
    SystemConfig cfg;
    cfg.eps = eps;
    const ChannelSet ch = harness::reference_fixture_channels();
    const SerSolution ser = beamform::run_algorithm1(cfg, ch);
    const TsrSolution tsr = tsr::run_algorithm2(cfg, ch);
    CHECK(ser.eval.rwc > tsr.rwc);
    CHECK(std::abs(ch.h_e_bar.dot(ser.beams.w_t)) <= 1e-10);
    CHECK(std::abs(ch.h_e_bar.dot(tsr.w_t)) <= 1e-10);
  }
}

TEST_CASE("every transmit design nulls the estimated eavesdropper") {
  SystemConfig cfg;
  for (const double eps : {0.0, 0.001, 0.05, 0.1}) {
    cfg.eps = eps;
    for (int t = 0; t < 100; ++t) {
      const ChannelSet ch = testing::draw(cfg, 900 + t);
      for (const ReceiveMode m : {ReceiveMode::AntennaReuse, ReceiveMode::Single}) {
        const SerSolution s = beamform::run_algorithm1(cfg, ch, m);
        CHECK(std::abs(ch.h_e_bar.dot(s.beams.w_t)) <= 1e-10);
        CHECK(std::abs(s.beams.w_t.norm() - 1.0) <= 1e-10);
        CHECK(s.eval.rwc >= 0.0);
        CHECK(s.power.delta > 0.0);
        CHECK(s.power.delta <= 1.0);
      }
    }
  }
}

TEST_CASE("config file to CSV through the library") {
  const fs::path cfg = scratch("lib.cfg");
  std::ofstream(cfg) << "sweep_param = eta\nsweep_values = 0.4, 0.8\ntrials = 40\n";
  const ExperimentSpec spec = harness::load_config(cfg);
  const fs::path out = scratch("lib.csv");
  harness::write_csv(harness::run_sweep(spec), out);
  std::istringstream in(slurp(out));
  std::string line;
  int rows = 0;
  std::getline(in, line);
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("command-line sweep is byte-identical across runs and thread counts") {
  const fs::path cfg = scratch("cli.cfg");
  std::ofstream(cfg) << "sweep_param = eps\nsweep_values = 0.01, 0.05\n";
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.csv");
  const fs::path c = scratch("c.csv");
  const std::string base = "sweep --config " + cfg.string() + " --trials 50 --seed 5";
  REQUIRE(run(base + " --threads 1 --out " + a.string()) == 0);
  REQUIRE(run(base + " --threads 1 --out " + b.string()) == 0);
  REQUIRE(run(base + " --threads 4 --out " + c.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  CHECK(slurp(a).rfind(harness::csv_header(), 0) == 0);
}

TEST_CASE("command-line flags override the environment") {
  const fs::path out = scratch("env.csv");
  REQUIRE(setenv("WPSEC_TRIALS", "7", 1) == 0);
  REQUIRE(run("sweep --scheme ser --out " + out.string()) == 0);
  CHECK(slurp(out).find(",7,1\n") != std::string::npos);
  REQUIRE(run("sweep --scheme ser --trials 9 --out " + out.string()) == 0);
  CHECK(slurp(out).find(",9,1\n") != std::string::npos);
  unsetenv("WPSEC_TRIALS");
}

TEST_CASE("command-line single dump and errors") {
  const fs::path out = scratch("single.json");
  REQUIRE(run("single --fixture --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.contains("ser"));
  CHECK(j.contains("tsr"));
  CHECK(j["ser"]["rwc"].get<double>() > 0.0);
  CHECK(j["ser"]["w_t"].size() == 3);

  const fs::path bad = scratch("bad.cfg");
  std::ofstream(bad) << "eta = 1.5\n";
  CHECK(run("sweep --config " + bad.string()) == 2);
  CHECK(run("sweep --scheme nope") == 2);
  CHECK(run("sweep --fixture") == 2);
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("command-line profile and validate") {
  const fs::path out = scratch("profile.csv");
  REQUIRE(run("profile-delta --points 11 --out " + out.string()) == 0);
  std::istringstream in(slurp(out));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 3 * 12);
  CHECK(run("validate --draws 5") == 0);
}
