// SPDX-License-Identifier: Apache-2.0
#include "pass/baseline.hpp"

#include <cmath>
#include <string>

namespace pass::baseline {

UlaScenario ula_from(const Scenario& sc, Position base) {
  UlaScenario ula;
  ula.base = base;
  ula.n_antennas = sc.n_waveguides();
  ula.lambda = sc.lambda;
  ula.beta0 = sc.beta0;
  ula.eta = sc.eta;
  ula.users = sc.users;
  ula.noise_powers = sc.noise_powers;
  ula.sinr_targets = sc.sinr_targets;
  return ula;
}

CMat ula_channel(const UlaScenario& ula) {
  CMat h(static_cast<Eigen::Index>(ula.n_antennas), static_cast<Eigen::Index>(ula.users.size()));
  for (std::size_t n = 0; n < ula.n_antennas; ++n) {
    const Position a = ula.antenna(n);
    for (std::size_t k = 0; k < ula.users.size(); ++k) {
      const Position& u = ula.users[k];
      const double r = std::hypot(a.x - u.x, a.y - u.y, a.z - u.z);
      if (r < kMinDistance)
        throw DegenerateGeometry("ula_channel: user " + std::to_string(k) + " on antenna " +
                                 std::to_string(n));
      h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
          ula.eta / r * std::polar(1.0, ula.beta0 * r);
    }
  }
  return h;
}

txbf::PowerMinResult solve_conventional(const UlaScenario& ula, const txbf::PowerMinOptions& options) {
  const auto n_users = static_cast<Eigen::Index>(ula.users.size());
  if (ula.sinr_targets.size() != ula.users.size() || ula.noise_powers.size() != ula.users.size())
    throw std::invalid_argument("solve_conventional: need one target and noise power per user");
  const RVec gammas = Eigen::Map<const RVec>(ula.sinr_targets.data(), n_users);
  const RVec noise = Eigen::Map<const RVec>(ula.noise_powers.data(), n_users);
  return txbf::solve_powermin(ula_channel(ula), gammas, noise, options);
}

}  // namespace pass::baseline
