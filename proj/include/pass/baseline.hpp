// SPDX-License-Identifier: Apache-2.0
//
// Conventional fixed-antenna MIMO reference: a half-wavelength ULA along the
// x-axis, one antenna per RF chain.
#pragma once

#include <vector>

#include "pass/channel.hpp"
#include "pass/txbf.hpp"

namespace pass::baseline {

struct UlaScenario {
  Position base{0.0, 0.0, 3.0};
  std::size_t n_antennas = 5;
  double lambda = 0.02;
  double beta0 = 0.0;
  double eta = 0.0;
  std::vector<Position> users;
  std::vector<double> noise_powers;
  std::vector<double> sinr_targets;

  double spacing() const { return 0.5 * lambda; }
  Position antenna(std::size_t n) const {
    return {base.x + static_cast<double>(n) * spacing(), base.y, base.z};
  }
};

/// ULA counterpart of a pinching-antenna scenario (same users, RF constants,
/// noise and targets); one antenna per waveguide/RF chain.
UlaScenario ula_from(const Scenario& sc, Position base = {0.0, 0.0, 3.0});

/// N x K channel: entry (n,k) = (eta / r) e^{j beta0 r}, so the received
/// amplitude of beam w at user k is column_k^H w.
/// Throws DegenerateGeometry when a user sits on an antenna.
CMat ula_channel(const UlaScenario& ula);

txbf::PowerMinResult solve_conventional(const UlaScenario& ula,
                                        const txbf::PowerMinOptions& options = {});

}  // namespace pass::baseline
