// SPDX-License-Identifier: Apache-2.0
#include "pass/coupledmode.hpp"

#include <cmath>
#include <string>

namespace pass::coupledmode {

double CouplingConfig::phi() const {
  const double db = delta_beta();
  return std::sqrt(kappa * kappa + 0.25 * db * db);
}

void CouplingConfig::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("coupling: kappa must be > 0");
  if (!(length >= 0.0)) throw std::invalid_argument("coupling: length must be >= 0");
  if (!(beta_g > 0.0) || !(beta_p > 0.0))
    throw std::invalid_argument("coupling: propagation constants must be > 0");
}

ModeAmplitudes mode_amplitudes(const CouplingConfig& cfg, double x) {
  const double db = cfg.delta_beta();
  const double phi = cfg.phi();
  const double s = std::sin(phi * x);
  const double c = std::cos(phi * x);
  const cplx a = cplx(c, 0.5 * db / phi * s) * std::polar(1.0, -0.5 * db * x);
  const cplx b = -kJ * (cfg.kappa / phi * s) * std::polar(1.0, 0.5 * db * x);
  return {a, b};
}

ModeAmplitudes integrate_modes(const CouplingConfig& cfg, double x,
                               std::optional<double> step) {
  const double h_nominal = step.value_or(1e-3 / cfg.phi());
  if (!(h_nominal > 0.0)) throw std::invalid_argument("integrate_modes: step must be > 0");
  if (x < 0.0) throw std::invalid_argument("integrate_modes: x must be >= 0");

  const double kappa = cfg.kappa;
  const double db = cfg.delta_beta();
  auto rhs = [&](double t, cplx a, cplx b) -> std::pair<cplx, cplx> {
    return {-kJ * kappa * b * std::polar(1.0, -db * t),
            -kJ * kappa * a * std::polar(1.0, db * t)};
  };

  cplx a = 1.0;
  cplx b = 0.0;
  if (x == 0.0) return {a, b};

  // Uniform steps that land exactly on x.
  const auto n = static_cast<long>(std::ceil(x / h_nominal));
  const double h = x / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * h;
    const auto [ka1, kb1] = rhs(t, a, b);
    const auto [ka2, kb2] = rhs(t + 0.5 * h, a + 0.5 * h * ka1, b + 0.5 * h * kb1);
    const auto [ka3, kb3] = rhs(t + 0.5 * h, a + 0.5 * h * ka2, b + 0.5 * h * kb2);
    const auto [ka4, kb4] = rhs(t + h, a + h * ka3, b + h * kb3);
    a += h / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
    b += h / 6.0 * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
  }
  return {a, b};
}

PowerSplit power_split(const CouplingConfig& cfg, double x) {
  const double phi = cfg.phi();
  const double ratio = cfg.kappa / phi;
  const double s = std::sin(phi * x);
  const double pinch = ratio * ratio * s * s;
  return {1.0 - pinch, pinch};
}

double full_radiation_length(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("full_radiation_length: kappa must be > 0");
  return kPi / (2.0 * kappa);
}

double AmplitudeLadder::total_radiated() const {
  double total = 0.0;
  for (double a : alphas) total += a * a;
  return total;
}

std::vector<double> alphas_from_deltas(const std::vector<double>& deltas) {
  std::vector<double> alphas(deltas.size());
  double remaining = 1.0;  // amplitude left in the guide
  for (std::size_t m = 0; m < deltas.size(); ++m) {
    alphas[m] = deltas[m] * remaining;
    remaining *= std::sqrt(std::max(0.0, 1.0 - deltas[m] * deltas[m]));
  }
  return alphas;
}

AmplitudeLadder make_equal_ladder(std::size_t count, double delta_eq) {
  if (count == 0) throw std::invalid_argument("make_equal_ladder: need at least one antenna");
  if (!(delta_eq > 0.0)) throw std::invalid_argument("make_equal_ladder: delta_eq must be > 0");
  // (m-1) delta_eq < 1 must hold for every m <= M, i.e. delta_eq <= 1/M.
  if (delta_eq * static_cast<double>(count) > 1.0 + 1e-15)
    throw InfeasibleLadder("make_equal_ladder: delta_eq " + std::to_string(delta_eq) +
                           " exceeds 1/M for M = " + std::to_string(count));

  AmplitudeLadder ladder;
  ladder.model = PowerModel::kEqual;
  ladder.alphas.assign(count, std::sqrt(delta_eq));
  ladder.deltas.resize(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double denom = 1.0 - static_cast<double>(m) * delta_eq;
    ladder.deltas[m] = std::min(1.0, std::sqrt(delta_eq / denom));
  }
  return ladder;
}

AmplitudeLadder make_proportional_ladder(std::size_t count, double total_radiated) {
  if (count == 0) throw std::invalid_argument("make_proportional_ladder: need at least one antenna");
  if (!(total_radiated > 0.0 && total_radiated < 1.0))
    throw std::invalid_argument("make_proportional_ladder: total must lie in (0,1)");

  // 1 - (1 - delta^2)^M = total  =>  delta^2 = 1 - (1 - total)^(1/M)
  const double delta2 = -std::expm1(std::log1p(-total_radiated) / static_cast<double>(count));
  const double keep = 1.0 - delta2;
  const double delta = std::sqrt(delta2);

  AmplitudeLadder ladder;
  ladder.model = PowerModel::kProportional;
  ladder.deltas.assign(count, delta);
  ladder.alphas.resize(count);
  double remaining2 = 1.0;
  for (std::size_t m = 0; m < count; ++m) {
    ladder.alphas[m] = delta * std::sqrt(remaining2);
    remaining2 *= keep;
  }
  return ladder;
}

std::vector<double> coupling_lengths(const AmplitudeLadder& ladder, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("coupling_lengths: kappa must be > 0");
  std::vector<double> lengths;
  lengths.reserve(ladder.deltas.size());
  for (double d : ladder.deltas) lengths.push_back(std::asin(d) / kappa);
  return lengths;
}

}  // namespace pass::coupledmode
