// SPDX-License-Identifier: Apache-2.0
//
// Low-complexity joint design with zero-forcing transmit beamforming: the
// per-user powers have a closed form and the antenna positions are found by
// element-wise search on tr((Psi^H Psi)^{-1} P) using a rank-one
// (Sherman-Morrison) split per waveguide.
#pragma once

#include <string>
#include <vector>

#include "pass/channel.hpp"
#include "pass/kernels.hpp"

namespace pass::zfopt {

/// P_k = gamma_k sigma_k^2.
RVec optimal_powers(const std::vector<double>& gammas, const std::vector<double>& noise_powers);

/// tr((Psi^H Psi)^{-1} diag(powers)). Throws SingularChannel when the Gram
/// matrix has condition number above 1e12.
double zf_objective(const CMat& psi, const RVec& powers);

/// W = Psi (Psi^H Psi)^{-1} diag(powers)^{1/2}.
CMat zf_matrix(const CMat& psi, const RVec& powers);

struct ZfOptions {
  std::size_t grid_points = 100000;  ///< continuous activation grid over [0, x_max]
  bool refine = true;                ///< Brent polish of the best grid point (continuous)
  double threshold = 1e-3;           ///< fractional objective decrease that stops the sweeps
  int max_sweeps = 30;
  kernels::Exec exec = kernels::Exec::kParallel;
};

struct ZfSolution {
  CMat w;
  PinchingLayout x;
  RVec powers;
  double total_power = 0.0;
  int iterations = 0;               ///< completed sweeps
  bool converged = false;
  std::vector<double> trace;        ///< objective after init and after each sweep [W]
  bool used_direct_fallback = false;
  double max_rank_one_mismatch = 0.0;  ///< worst relative gap, rank-one vs direct objective
  std::vector<std::string> warnings;
};

/// Antennas uniformly spread at (m - 1/2) x_max / M on every waveguide,
/// snapped to the grid under discrete activation.
PinchingLayout initial_layout(const Scenario& sc);

ZfSolution sweep_positions(const Scenario& sc, const PinchingLayout& init,
                           const ZfOptions& options = {});

inline ZfSolution solve(const Scenario& sc, const ZfOptions& options = {}) {
  return sweep_positions(sc, initial_layout(sc), options);
}

}  // namespace pass::zfopt
