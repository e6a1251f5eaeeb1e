// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: INI-style `key = value` sections, built-in named
// scenarios and the desk/paper run profiles.
#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pass/coupledmode.hpp"
#include "pass/penalty.hpp"
#include "pass/zfopt.hpp"

namespace pass::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

enum class SweepKind {
  kPowerVsSinr,
  kPowerVsDistance,
  kPowerVsAntennas,
  kPowerVsDiscrete,
  kConvergenceTrace,
  kSinrVsChannelError,
};

enum class Algorithm { kPenalty, kZf, kConventional };
enum class Activation { kContinuous, kDiscrete };

std::string to_string(SweepKind kind);
std::string to_string(Algorithm algo);
std::string to_string(Activation act);
std::string to_string(coupledmode::PowerModel model);
SweepKind parse_sweep_kind(const std::string& s);
Algorithm parse_algorithm(const std::string& s);
Activation parse_activation(const std::string& s);
coupledmode::PowerModel parse_power_model(const std::string& s);

/// Geometry and RF setup. Lengths in metres.
struct ScenarioParams {
  std::size_t n_waveguides = 5;
  std::size_t antennas_per_waveguide = 6;
  std::size_t n_users = 4;
  double frequency_ghz = 15.0;
  double n_g = 1.4;
  double waveguide_spacing = 6.0;
  double waveguide_height = 3.0;  // d_y
  double d0 = 15.0;               // feed-to-service-area distance
  double dx = 30.0;               // service-area length along x
  double service_half_width = -1.0;  // < 0: (N - 1) / 2 * waveguide_spacing
  double x_max = 50.0;
  double min_spacing = 0.1;
  double positions_per_meter = 10.0;  // discrete activation density
  double noise_dbm = -80.0;
  double sinr_db = 20.0;
  double total_radiated = 0.9;
  double segment_margin = -1.0;  // < 0: (x_max - dx) / 2, antenna segment centred on the area
  double bs_height = 3.0;        // conventional ULA at (0, 0, bs_height)

  double half_width() const;
  double margin() const;
  void validate() const;
};

struct ExperimentConfig {
  std::string name = "custom";
  ScenarioParams scenario;
  SweepKind sweep = SweepKind::kPowerVsSinr;
  std::vector<double> values{20.0};
  std::vector<Algorithm> algorithms{Algorithm::kZf, Algorithm::kConventional};
  coupledmode::PowerModel power_model = coupledmode::PowerModel::kEqual;
  Activation activation = Activation::kContinuous;
  int n_drops = 20;
  std::uint64_t seed = 1;
  std::size_t grid_points = 100000;
  penalty::PenaltyParams penalty;
  zfopt::ZfOptions zf;

  bool has(Algorithm a) const;
  /// Throws ConfigError.
  void validate() const;
};

/// "desk": 20 drops, 1e5 grid points. "paper": 100 drops, 1e6 grid points.
void apply_profile(ExperimentConfig& cfg, const std::string& profile);

ExperimentConfig parse_config(std::istream& in, const std::string& name = "custom");
/// A built-in scenario name or a path to a config file.
ExperimentConfig load_config(const std::string& name_or_path);

std::vector<std::string> builtin_scenario_names();
/// Raw text of a built-in scenario; throws ConfigError if unknown.
const std::string& builtin_scenario_text(const std::string& name);

}  // namespace pass::harness
