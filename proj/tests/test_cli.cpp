// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(PASSIM_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "passim_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("validate-config and list-scenarios succeed") {
  CHECK(run("validate-config") == 0);
  CHECK(run("validate-config --config power_vs_discrete --profile paper") == 0);
  CHECK(run("list-scenarios") == 0);
}

TEST_CASE("configuration and usage errors exit with 2") {
  CHECK(run("validate-config --config no_such_scenario") == 2);
  CHECK(run("run --config paper_defaults --algo quantum") == 2);
  CHECK(run("run --drops 0") == 2);
  CHECK(run("run --profile laptop") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("") == 2);
  const fs::path bad = temp_dir() / "bad.cfg";
  std::ofstream(bad) << "[scenario]\nn_waveguides = -3\n";
  CHECK(run("validate-config --config " + bad.string()) == 2);
}

TEST_CASE("run writes the CSV header, a trace file and reproducible bodies") {
  const fs::path dir = temp_dir();
  const std::string common = "run --config paper_defaults --drops 2 --grid-points 2000 --algo zf --no-timing";
  REQUIRE(run(common + " --out " + (dir / "a.csv").string()) == 0);
  REQUIRE(run(common + " --out " + (dir / "b.csv").string()) == 0);
  const std::string a = slurp(dir / "a.csv");
  CHECK(a.rfind("sweep_value,drop,algorithm,power_model,activation,total_power_dbm,mean_sinr_db,converged,runtime_ms\n", 0) == 0);
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(fs::exists(dir / "a.csv.trace.csv"));
  CHECK(a.find("20,mean,zf,equal,continuous,") != std::string::npos);
}

TEST_CASE("overrides reach the run") {
  const fs::path dir = temp_dir();
  REQUIRE(run("run --config paper_defaults --drops 1 --grid-points 2000 --algo zf --power-model proportional "
              "--activation discrete --seed 9 --out " + (dir / "c.csv").string()) == 0);
  const std::string c = slurp(dir / "c.csv");
  CHECK(c.find(",zf,proportional,discrete,") != std::string::npos);
}

TEST_CASE("strict mode turns solver failures into exit 3") {
  // users far down the end-fire direction of the small array make the
  // conventional channel numerically rank deficient
  const fs::path cfg = temp_dir() / "endfire.cfg";
  std::ofstream(cfg) << "[scenario]\nd0_m = 45\n[sweep]\nkind = power_vs_sinr\nvalues = 20\n"
                        "[run]\nalgorithms = conventional\ndrops = 3\n";
  CHECK(run("run --config " + cfg.string()) == 0);
  CHECK(run("run --strict --config " + cfg.string()) == 3);
}
