// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte-Carlo runner for the parameter sweeps.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pass/channel.hpp"
#include "pass/harness/config.hpp"

namespace pass::harness {

/// Counter-based generator: output i of stream (seed, drop, purpose) is a
/// SplitMix64 hash of the key and i. Streams are independent and need no
/// shared state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t drop, std::uint64_t purpose);

  std::uint64_t next();
  double uniform();  ///< [0, 1) with 53 random bits
  double normal();   ///< standard normal (Box-Muller)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum Purpose : std::uint64_t {
  kPurposeUsers = 1,
  kPurposeChannelError = 2,
};

/// Uniform draw on a complex sphere: a vector of `len` entries with norm `radius`.
CVec random_sphere_vector(CounterRng& rng, Eigen::Index len, double radius);

/// Service-area rectangle: x in [d0, d0 + dx], |y| <= half_width, z = 0.
struct ServiceArea {
  double x_lo, x_hi, y_lo, y_hi;
};
ServiceArea service_area(const ScenarioParams& p);

/// K users i.i.d. uniform on the service area; depends only on (seed, drop).
std::vector<Position> drop_users(const ScenarioParams& p, std::uint64_t seed, std::uint64_t drop);

Scenario build_scenario(const ScenarioParams& p, coupledmode::PowerModel model,
                        Activation activation, const std::vector<Position>& users);

/// The scenario parameters with the swept quantity set to `value`.
ScenarioParams params_at(const ExperimentConfig& cfg, double value, Activation* activation = nullptr);

struct ResultRow {
  double sweep_value = 0.0;
  int drop = -1;  ///< -1 marks the summary row
  Algorithm algorithm = Algorithm::kZf;
  coupledmode::PowerModel power_model = coupledmode::PowerModel::kEqual;
  Activation activation = Activation::kContinuous;
  double total_power_w = 0.0;
  double mean_sinr = 0.0;  ///< linear, averaged over users
  bool converged = false;
  bool failed = false;
  double runtime_ms = 0.0;
  std::string error;
};

struct TraceRow {
  double sweep_value = 0.0;
  int drop = 0;
  Algorithm algorithm = Algorithm::kPenalty;
  int outer = 0;
  int inner = 0;
  double power_w = 0.0;
  double violation = 0.0;
};

struct SweepResult {
  std::vector<ResultRow> rows;  ///< per drop, followed by one summary row per (value, algorithm)
  std::vector<TraceRow> trace;
  int failures = 0;
};

/// Runs every (sweep value, drop, algorithm) combination. Solver failures are
/// recorded on their row and never abort the sweep.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// Mean over the summary rows matching (value, algorithm); NaN if absent.
double summary_power_w(const SweepResult& r, double value, Algorithm algo);

}  // namespace pass::harness
