// SPDX-License-Identifier: Apache-2.0
//
// Fixed-channel multi-user downlink power minimisation under SINR targets,
// solved through uplink-downlink duality.
#pragma once

#include "pass/types.hpp"

namespace pass::txbf {

struct PowerMinOptions {
  double tol = 1e-10;  ///< max relative change of the dual powers
  int max_iters = 500;
  double max_condition = 1e12;  ///< Gram condition number treated as rank loss
};

struct PowerMinResult {
  CMat w;                 ///< N x K beamformers
  double total_power = 0.0;
  RVec achieved_sinrs;
  RVec dual_powers;       ///< uplink powers q_k on the noise-normalised channels
  int iterations = 0;
  bool converged = false;
};

/// min sum_k ||w_k||^2  s.t.  |u_k^H w_k|^2 / (sum_{i!=k} |u_k^H w_i|^2 + sigma_k^2) >= gamma_k,
/// with u_k the k-th column of `channels` (N x K, K <= N).
///
/// The dual powers follow the fixed point
///   q_k = gamma_k / (v_k^H (I + sum_{i!=k} q_i v_i v_i^H)^{-1} v_k),  v_k = u_k / sigma_k,
/// the beam directions are the normalised MMSE filters (I + sum_i q_i v_i v_i^H)^{-1} v_k, and
/// the downlink powers solve the K x K system that makes every constraint tight.
///
/// Throws InfeasibleInstance for rank-deficient channels, a diverging fixed
/// point or a power system without a positive solution.
PowerMinResult solve_powermin(const CMat& channels, const RVec& gammas, const RVec& noise_powers,
                              const PowerMinOptions& options = {});

}  // namespace pass::txbf
