// SPDX-License-Identifier: Apache-2.0
//
// Penalty-based alternating optimisation of transmit beamforming and antenna
// positions.
//
// The coupling between the beamformer and the positions is broken with an
// auxiliary channel U and per-antenna parts U_m, tied back to the true channel
// by quadratic penalties:
//
//   min  P + (1/rho) ( ||U - sum_m U_m||_F^2 + sum_m ||U_m - Phi_m(X)||_F^2 )
//   s.t. P |u_k^H v_k|^2 >= gamma_k (P sum_{i!=k} |u_k^H v_i|^2 + sigma_k^2),  ||V||_F = 1,
//        X feasible.
//
// Inner iterations update V, (U, P), U_m and X in turn; the outer loop shrinks
// rho until the constraint violation is small. The solver works in scaled
// units (channels multiplied by `channel_scale`, powers in `power_unit_w`);
// reported powers and beamformers are in SI units.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "pass/channel.hpp"
#include "pass/kernels.hpp"
#include "pass/txbf.hpp"

namespace pass::penalty {

struct PenaltyParams {
  double rho0 = 10.0;
  double epsilon = 0.1;  ///< penalty reduction factor, 0 < epsilon < 1
  double inner_tol = 1e-3;
  double violation_tol = 1e-3;
  int max_inner = 50;
  int max_outer = 8;

  std::size_t grid_points = 100000;
  bool refine = true;
  double x_threshold = 1e-3;  ///< fractional decrease stopping the position sweeps
  int max_x_sweeps = 30;

  double channel_scale = 0.0;  ///< 0 selects 1/eta
  double power_unit_w = 1e-3;  ///< internal power unit (1 mW)

  kernels::Exec exec = kernels::Exec::kParallel;

  void validate() const;
};

struct PenaltyState {
  CMat v;                     ///< N x K, ||V||_F = 1
  CMat u;                     ///< N x K auxiliary channel
  std::vector<CMat> u_parts;  ///< M matrices N x K
  PinchingLayout x;
  double p = 1.0;    ///< transmit power in internal units
  double rho = 10.0;
};

struct TraceRecord {
  int outer = 0;
  int inner = 0;
  double power_w = 0.0;
  double violation = 0.0;
};

/// Penalised objective before an inner iteration and after each of its four
/// block updates (V, U, U_m, X).
using BlockObjectives = std::array<double, 5>;

struct PenaltyReport {
  CMat w;
  PinchingLayout x;
  double total_power = 0.0;  ///< [W], after re-solving on the true channel
  RVec achieved_sinrs;
  double violation = 0.0;
  int inner_iterations = 0;
  int outer_iterations = 0;
  bool converged = false;
  std::vector<TraceRecord> trace;
  std::vector<BlockObjectives> blocks;
  std::vector<std::string> warnings;
};

class PenaltySolver {
 public:
  PenaltySolver(const Scenario& sc, PenaltyParams params);

  /// U = Psi(X), U_m = Phi_m(X), then V and P from update_v.
  PenaltyState initial_state(const PinchingLayout& x, double rho) const;

  /// Solves the fixed-U power minimisation and sets V = W / ||W||_F, P = ||W||^2.
  /// Keeps the incumbent (V, P) if it is at least as good.
  void update_v(PenaltyState& s, bool keep_incumbent = true) const;
  /// Linearised (U, P) subproblem; see penalty.cpp.
  void update_u(PenaltyState& s) const;
  /// U_m = Phi_m + (U - sum_i Phi_i) / (M + 1).
  void update_u_parts(PenaltyState& s) const;
  /// Element-wise position search on sum_m ||U_m - Phi_m(X)||^2.
  void update_x(PenaltyState& s) const;

  double objective(const PenaltyState& s) const;
  /// max(||U - sum U_m||_inf, max_m ||U_m - Phi_m||_inf), entry-wise max modulus.
  double violation(const PenaltyState& s) const;
  /// sum_m ||U_m - Phi_m(X)||_F^2
  double position_residual(const PenaltyState& s) const;

  /// Scaled Phi_m(X) for the current layout.
  std::vector<CMat> scaled_phis(const PinchingLayout& x) const;

  PenaltyReport run(const PinchingLayout& init_x) const;

  double scale() const { return scale_; }
  const RVec& scaled_noise() const { return noise_; }
  const RVec& gammas() const { return gammas_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const Scenario& sc_;
  PenaltyParams params_;
  double scale_;
  RVec noise_;   ///< sigma_k^2 in internal units
  RVec gammas_;
  mutable std::vector<std::string> warnings_;
};

/// Linearised SINR subproblem for one fixed transmit power, exposed for tests:
/// the projection of c onto { u : u^H Q u - 2 Re(b^H u) + d + sigma2 / p <= 0 }.
struct ProjectionResult {
  CVec u;
  double mu = 0.0;
  double distance2 = 0.0;
  bool feasible = true;
};

class UserProjector {
 public:
  /// q: interference form sum_{i!=k} v_i v_i^H; b, d: linearisation terms.
  UserProjector(const CMat& q, const CVec& b, double d, const CVec& c, double sigma2);
  ProjectionResult project(double p) const;
  /// Smallest transmit power for which the constraint set is non-empty (0 if none).
  double min_feasible_power() const { return p_min_; }

 private:
  double constraint(const CVec& ut, double p) const;
  CVec solution(double mu) const;

  CMat evecs_;
  RVec evals_;
  CVec b_t_;
  CVec c_t_;
  double d_;
  double sigma2_;
  double p_min_ = 0.0;
};

}  // namespace pass::penalty
