// SPDX-License-Identifier: Apache-2.0
//
// passim: runs the pinching-antenna beamforming sweeps and writes CSV results.
//
//   passim run --config paper_defaults --out results.csv
//   passim validate-config --config my.cfg
//   passim list-scenarios

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pass/harness/config.hpp"
#include "pass/harness/csv.hpp"
#include "pass/harness/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Overrides {
  std::string config = "paper_defaults";
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<std::string> algo;
  std::optional<std::string> activation;
  std::optional<std::string> power_model;
  std::optional<std::size_t> grid_points;
  std::optional<std::string> profile;
  std::string out;
  bool strict = false;
  bool no_timing = false;
};

pass::harness::ExperimentConfig resolve(const Overrides& o) {
  using namespace pass::harness;
  ExperimentConfig cfg = load_config(o.config);
  if (o.profile) apply_profile(cfg, *o.profile);
  if (o.seed) cfg.seed = *o.seed;
  if (o.drops) cfg.n_drops = *o.drops;
  if (o.grid_points) cfg.grid_points = *o.grid_points;
  if (o.algo) {
    cfg.algorithms.clear();
    std::string rest = *o.algo;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const std::size_t comma = rest.find(',', pos);
      const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!item.empty()) cfg.algorithms.push_back(parse_algorithm(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (o.activation) cfg.activation = parse_activation(*o.activation);
  if (o.power_model) cfg.power_model = parse_power_model(*o.power_model);
  cfg.validate();
  return cfg;
}

void add_config_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config,-c", o.config, "built-in scenario name or config file path")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--drops", o.drops, "number of user drops");
  cmd->add_option("--algo", o.algo, "comma-separated list of penalty, zf, conventional");
  cmd->add_option("--activation", o.activation, "continuous or discrete");
  cmd->add_option("--power-model", o.power_model, "equal or proportional");
  cmd->add_option("--grid-points", o.grid_points, "continuous search grid size");
  cmd->add_option("--profile", o.profile, "desk (20 drops, 1e5 grid) or paper (100 drops, 1e6 grid)");
}

int run(const Overrides& o) {
  using namespace pass::harness;
  const ExperimentConfig cfg = resolve(o);
  const SweepResult result = run_sweep(cfg);

  if (o.out.empty() || o.out == "-") {
    write_results_csv(std::cout, result.rows, !o.no_timing);
  } else {
    std::ofstream csv(o.out);
    if (!csv) throw ConfigError("cannot open output file '" + o.out + "'");
    write_results_csv(csv, result.rows, !o.no_timing);
    if (!result.trace.empty()) {
      std::ofstream trace(o.out + ".trace.csv");
      if (!trace) throw ConfigError("cannot open trace file '" + o.out + ".trace.csv'");
      write_trace_csv(trace, result.trace);
    }
  }
  for (const auto& r : result.rows) {
    if (r.failed && r.drop >= 0) {
      std::cerr << "warning: " << to_string(r.algorithm) << " failed at value " << r.sweep_value
                << ", drop " << r.drop << ": " << r.error << '\n';
    }
  }
  if (o.strict && result.failures > 0) {
    std::cerr << "error: " << result.failures << " solver failure(s)\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pinching-antenna downlink beamforming simulator"};
  app.require_subcommand(1);

  Overrides o;
  CLI::App* run_cmd = app.add_subcommand("run", "run a sweep and write CSV results");
  add_config_options(run_cmd, o);
  run_cmd->add_option("--out,-o", o.out, "CSV output path (stdout if omitted); traces go to <out>.trace.csv");
  run_cmd->add_flag("--strict", o.strict, "exit with status 3 if any solver fails");
  run_cmd->add_flag("--no-timing", o.no_timing, "write runtime_ms as 0 for reproducible output");

  CLI::App* validate_cmd = app.add_subcommand("validate-config", "parse and check a configuration");
  add_config_options(validate_cmd, o);

  app.add_subcommand("list-scenarios", "print the built-in scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& name : pass::harness::builtin_scenario_names()) std::cout << name << '\n';
      return kExitOk;
    }
    if (app.got_subcommand("validate-config")) {
      const auto cfg = resolve(o);
      std::cout << cfg.name << ": ok (" << to_string(cfg.sweep) << ", " << cfg.values.size()
                << " values, " << cfg.n_drops << " drops)\n";
      return kExitOk;
    }
    return run(o);
  } catch (const pass::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return o.strict ? kExitSolver : 1;
  }
}
