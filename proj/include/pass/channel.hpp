// SPDX-License-Identifier: Apache-2.0
//
// Geometry and channel synthesis for a multi-waveguide pinching-antenna system.
//
// Conventions: user k hears conj(Psi_{n,k}) from waveguide n, so column k of
// Psi = G^H H is the channel u_k of user k and the received amplitude of a
// beam w is u_k^H w.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pass/coupledmode.hpp"
#include "pass/types.hpp"

namespace pass {

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Where pinching antennas may be activated along each waveguide.
struct FeasibleSet {
  enum class Kind { kContinuous, kDiscrete };

  Kind kind = Kind::kContinuous;
  double x_max = 50.0;
  std::size_t q_points = 2;  ///< discrete only; grid includes both ends

  static FeasibleSet continuous(double x_max);
  static FeasibleSet discrete(double x_max, std::size_t q_points);

  bool is_discrete() const { return kind == Kind::kDiscrete; }
  /// i-th point of a uniform grid of `points` samples over [0, x_max].
  double grid_value(std::size_t i, std::size_t points) const {
    return x_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  bool contains(double x) const;
  void validate() const;
};

/// Antenna positions: column n holds the M local x-coordinates on waveguide n.
struct PinchingLayout {
  RMat x;  // M x N

  std::size_t n_antennas() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t n_waveguides() const { return static_cast<std::size_t>(x.cols()); }
};

struct Scenario {
  // waveguides run parallel to the x-axis; local coordinate 0 sits at global x0
  std::vector<double> waveguide_y;
  std::vector<double> waveguide_z;
  double waveguide_x0 = 0.0;
  std::size_t n_antennas = 1;  ///< M, pinching antennas per waveguide

  std::vector<Position> users;

  double lambda = 0.02;
  double beta0 = 0.0;  ///< 2 pi / lambda
  double n_g = 1.4;
  double beta_g = 0.0;  ///< 2 pi n_g / lambda
  double eta = 0.0;     ///< lambda / (4 pi)

  std::vector<double> noise_powers;  ///< sigma_k^2 [W]
  std::vector<double> sinr_targets;  ///< gamma_k, linear

  coupledmode::AmplitudeLadder ladder;
  FeasibleSet feasible;
  double min_spacing = 0.1;  ///< Delta x [m]

  std::size_t n_waveguides() const { return waveguide_y.size(); }
  std::size_t n_users() const { return users.size(); }

  /// Sets beta0, beta_g and eta from lambda and n_g.
  void derive_rf_constants();
  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  /// omega_{k,n} = (y_g,n - y_u,k)^2 + z_g,n^2 (users sit on z = 0 in the
  /// usual setup; a non-zero user height is folded in here).
  double omega(std::size_t k, std::size_t n) const;
};

/// Distance between a user and the antenna at local position x_pos on waveguide n.
double distance(const Scenario& sc, const Position& user, std::size_t n, double x_pos);

/// True when every column is ascending with gaps >= min_spacing and every
/// entry lies in the feasible set. `why` receives the first violation.
bool is_feasible(const Scenario& sc, const PinchingLayout& layout, std::string* why = nullptr);
void validate_layout(const Scenario& sc, const PinchingLayout& layout);

/// g(x_n): entry m = alpha_m e^{-j beta_g x_{n,m}}.
CVec inwaveguide_vector(const RVec& xs, const coupledmode::AmplitudeLadder& ladder, double beta_g);

/// h_k(x_n): entry m = eta e^{+j beta0 r} / r (already conjugated), so that
/// Psi_{n,k} = g^H h_k.
CVec free_space_vector(const Scenario& sc, std::size_t k, std::size_t n, const RVec& xs);

struct EffectiveChannel {
  CMat psi;               ///< N x K
  std::vector<CMat> phis;  ///< M matrices N x K, sum equals psi
};

/// [Phi_m]_{n,k} = (eta alpha_m / r) e^{j(beta0 r + beta_g x_{n,m})}, Psi = sum_m Phi_m.
/// Throws DegenerateGeometry when any r < 1e-6 m.
EffectiveChannel effective_channel(const Scenario& sc, const PinchingLayout& layout);

/// Psi assembled as g^H(x_n) h_k(x_n); independent of the Phi route.
CMat effective_channel_stacked(const Scenario& sc, const PinchingLayout& layout);

/// Psi with h_k replaced by h_k + dh_k. dh[k] has length N*M, waveguide-major.
CMat effective_channel_perturbed(const Scenario& sc, const PinchingLayout& layout,
                                 const std::vector<CVec>& dh);

/// SINR_k = |u_k^H w_k|^2 / (sum_{i!=k} |u_k^H w_i|^2 + sigma_k^2), u_k = psi.col(k).
RVec received_sinr(const CMat& psi, const CMat& w, const std::vector<double>& noise_powers);
RVec received_sinr(const CMat& psi, const CMat& w, const RVec& noise_powers);

inline constexpr double kMinDistance = 1e-6;

}  // namespace pass
