// SPDX-License-Identifier: Apache-2.0
//
// Coupled-mode model of a pinching antenna acting as an open-ended directional
// coupler on a dielectric waveguide, and the per-antenna radiation amplitude
// ladders derived from it.
#pragma once

#include <optional>
#include <vector>

#include "pass/types.hpp"

namespace pass::coupledmode {

/// Physical parameters of one waveguide / pinching-antenna coupler.
struct CouplingConfig {
  double kappa = 100.0;  ///< coupling coefficient [rad/m]
  double length = 0.0;   ///< coupling length L [m]
  double beta_g = 1.0;   ///< waveguide propagation constant [rad/m]
  double beta_p = 1.0;   ///< pinching-antenna propagation constant [rad/m]

  double delta_beta() const { return beta_p - beta_g; }
  double phi() const;

  /// Throws std::invalid_argument unless kappa, beta_g, beta_p > 0 and length >= 0.
  void validate() const;
};

struct ModeAmplitudes {
  cplx guide;  ///< A(x), waveguide mode
  cplx pinch;  ///< B(x), pinching-antenna mode
};

struct PowerSplit {
  double guide;
  double pinch;
};

/// Closed-form solution of the coupled equations with A(0)=1, B(0)=0.
ModeAmplitudes mode_amplitudes(const CouplingConfig& cfg, double x);

/// Fixed-step RK4 integration of
///   dA/dx = -j kappa B e^{-j dbeta x},  dB/dx = -j kappa A e^{j dbeta x}.
/// The default step is 1e-3 / phi. Throws std::invalid_argument if step <= 0.
ModeAmplitudes integrate_modes(const CouplingConfig& cfg, double x,
                               std::optional<double> step = std::nullopt);

PowerSplit power_split(const CouplingConfig& cfg, double x);

/// pi / (2 kappa): the length at which a matched coupler radiates everything.
double full_radiation_length(double kappa);

enum class PowerModel { kEqual, kProportional };

/// Radiation amplitudes alpha_m of the M antennas on one waveguide together
/// with the coupling ratios delta_m = sin(kappa L_m) that realise them.
struct AmplitudeLadder {
  PowerModel model = PowerModel::kEqual;
  std::vector<double> alphas;
  std::vector<double> deltas;

  std::size_t size() const { return alphas.size(); }
  double total_radiated() const;
};

/// Every antenna radiates the fraction delta_eq of the input power.
/// Throws InfeasibleLadder when delta_eq > 1/M.
AmplitudeLadder make_equal_ladder(std::size_t count, double delta_eq);

/// Identical antennas; each radiates delta^2 of the power still in the guide.
/// delta is chosen so the ladder radiates `total_radiated` in total.
AmplitudeLadder make_proportional_ladder(std::size_t count, double total_radiated);

/// alpha_m = delta_m * prod_{i<m} sqrt(1 - delta_i^2).
std::vector<double> alphas_from_deltas(const std::vector<double>& deltas);

/// Coupling lengths L_m = asin(delta_m) / kappa realising a ladder.
std::vector<double> coupling_lengths(const AmplitudeLadder& ladder, double kappa);

}  // namespace pass::coupledmode
