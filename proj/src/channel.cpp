// SPDX-License-Identifier: Apache-2.0
#include "pass/channel.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace pass {

namespace {

constexpr double kGridTol = 1e-9;

std::string fmt_index(std::size_t n, std::size_t m) {
  std::ostringstream os;
  os << "(waveguide " << n << ", antenna " << m << ")";
  return os.str();
}

}  // namespace

FeasibleSet FeasibleSet::continuous(double x_max) {
  FeasibleSet s;
  s.kind = Kind::kContinuous;
  s.x_max = x_max;
  s.validate();
  return s;
}

FeasibleSet FeasibleSet::discrete(double x_max, std::size_t q_points) {
  FeasibleSet s;
  s.kind = Kind::kDiscrete;
  s.x_max = x_max;
  s.q_points = q_points;
  s.validate();
  return s;
}

void FeasibleSet::validate() const {
  if (!(x_max > 0.0)) throw std::invalid_argument("feasible set: x_max must be > 0");
  if (is_discrete() && q_points < 2)
    throw std::invalid_argument("feasible set: discrete grid needs at least 2 points");
}

bool FeasibleSet::contains(double x) const {
  const double tol = kGridTol * std::max(1.0, x_max);
  if (x < -tol || x > x_max + tol) return false;
  if (!is_discrete()) return true;
  const double step = x_max / static_cast<double>(q_points - 1);
  const auto i = static_cast<std::size_t>(std::llround(std::max(0.0, x) / step));
  return std::abs(x - grid_value(i, q_points)) <= tol;
}

void Scenario::derive_rf_constants() {
  beta0 = 2.0 * kPi / lambda;
  beta_g = 2.0 * kPi * n_g / lambda;
  eta = lambda / (4.0 * kPi);
}

void Scenario::validate() const {
  const std::size_t n = n_waveguides();
  const std::size_t k = n_users();
  if (waveguide_z.size() != n) throw std::invalid_argument("scenario: waveguide_y/z size mismatch");
  if (k < 1) throw std::invalid_argument("scenario: need at least one user");
  if (n < k) throw std::invalid_argument("scenario: need N >= K");
  if (n_antennas < 1) throw std::invalid_argument("scenario: need M >= 1");
  if (ladder.size() != n_antennas)
    throw std::invalid_argument("scenario: ladder length differs from M");
  if (!(beta0 > 0.0) || !(beta_g > 0.0) || !(eta > 0.0))
    throw std::invalid_argument("scenario: beta0, beta_g and eta must be > 0");
  if (std::abs(beta_g - n_g * beta0) > 1e-12 * beta_g)
    throw std::invalid_argument("scenario: beta_g != n_g * beta0");
  if (noise_powers.size() != k || sinr_targets.size() != k)
    throw std::invalid_argument("scenario: need one noise power and SINR target per user");
  for (std::size_t i = 0; i < k; ++i) {
    if (!(noise_powers[i] > 0.0)) throw std::invalid_argument("scenario: noise powers must be > 0");
    if (!(sinr_targets[i] > 0.0)) throw std::invalid_argument("scenario: SINR targets must be > 0");
  }
  if (!(min_spacing >= 0.0)) throw std::invalid_argument("scenario: min_spacing must be >= 0");
  feasible.validate();
}

double Scenario::omega(std::size_t k, std::size_t n) const {
  const double dy = waveguide_y[n] - users[k].y;
  const double dz = waveguide_z[n] - users[k].z;
  return dy * dy + dz * dz;
}

double distance(const Scenario& sc, const Position& user, std::size_t n, double x_pos) {
  const double dx = sc.waveguide_x0 + x_pos - user.x;
  const double dy = sc.waveguide_y[n] - user.y;
  const double dz = sc.waveguide_z[n] - user.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool is_feasible(const Scenario& sc, const PinchingLayout& layout, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (layout.n_antennas() != sc.n_antennas || layout.n_waveguides() != sc.n_waveguides())
    return fail("layout shape does not match scenario");
  const double tol = kGridTol * std::max(1.0, sc.feasible.x_max);
  for (std::size_t n = 0; n < layout.n_waveguides(); ++n) {
    for (std::size_t m = 0; m < layout.n_antennas(); ++m) {
      const double x = layout.x(m, n);
      if (!std::isfinite(x)) return fail("non-finite position " + fmt_index(n, m));
      if (!sc.feasible.contains(x)) return fail("position outside feasible set " + fmt_index(n, m));
      if (m > 0 && x - layout.x(m - 1, n) < sc.min_spacing - tol)
        return fail("spacing below minimum " + fmt_index(n, m));
    }
  }
  return true;
}

void validate_layout(const Scenario& sc, const PinchingLayout& layout) {
  std::string why;
  if (!is_feasible(sc, layout, &why)) throw std::invalid_argument("layout: " + why);
}

CVec inwaveguide_vector(const RVec& xs, const coupledmode::AmplitudeLadder& ladder, double beta_g) {
  CVec g(xs.size());
  for (Eigen::Index m = 0; m < xs.size(); ++m)
    g(m) = ladder.alphas[static_cast<std::size_t>(m)] * std::polar(1.0, -beta_g * xs(m));
  return g;
}

CVec free_space_vector(const Scenario& sc, std::size_t k, std::size_t n, const RVec& xs) {
  CVec h(xs.size());
  for (Eigen::Index m = 0; m < xs.size(); ++m) {
    const double r = distance(sc, sc.users[k], n, xs(m));
    if (r < kMinDistance) throw DegenerateGeometry("user " + std::to_string(k) + " on an antenna");
    h(m) = sc.eta / r * std::polar(1.0, sc.beta0 * r);
  }
  return h;
}

EffectiveChannel effective_channel(const Scenario& sc, const PinchingLayout& layout) {
  const std::size_t n_wg = sc.n_waveguides();
  const std::size_t n_ant = sc.n_antennas;
  const std::size_t n_users = sc.n_users();
  if (layout.n_antennas() != n_ant || layout.n_waveguides() != n_wg)
    throw std::invalid_argument("effective_channel: layout shape mismatch");

  EffectiveChannel ch;
  ch.psi = CMat::Zero(n_wg, n_users);
  ch.phis.assign(n_ant, CMat::Zero(n_wg, n_users));
  for (std::size_t m = 0; m < n_ant; ++m) {
    const double eta_alpha = sc.eta * sc.ladder.alphas[m];
    for (std::size_t n = 0; n < n_wg; ++n) {
      const double x = layout.x(m, n);
      for (std::size_t k = 0; k < n_users; ++k) {
        const double r = distance(sc, sc.users[k], n, x);
        if (r < kMinDistance)
          throw DegenerateGeometry("user " + std::to_string(k) + " on antenna " + fmt_index(n, m));
        ch.phis[m](n, k) = eta_alpha / r * std::polar(1.0, sc.beta0 * r + sc.beta_g * x);
      }
    }
    ch.psi += ch.phis[m];
  }
  return ch;
}

CMat effective_channel_stacked(const Scenario& sc, const PinchingLayout& layout) {
  const std::size_t n_wg = sc.n_waveguides();
  CMat psi(n_wg, sc.n_users());
  for (std::size_t n = 0; n < n_wg; ++n) {
    const RVec xs = layout.x.col(static_cast<Eigen::Index>(n));
    const CVec g = inwaveguide_vector(xs, sc.ladder, sc.beta_g);
    for (std::size_t k = 0; k < sc.n_users(); ++k)
      psi(n, k) = g.dot(free_space_vector(sc, k, n, xs));  // dot() conjugates g
  }
  return psi;
}

CMat effective_channel_perturbed(const Scenario& sc, const PinchingLayout& layout,
                                 const std::vector<CVec>& dh) {
  const std::size_t n_wg = sc.n_waveguides();
  const auto n_ant = static_cast<Eigen::Index>(sc.n_antennas);
  if (dh.size() != sc.n_users())
    throw std::invalid_argument("effective_channel_perturbed: one error vector per user required");
  CMat psi(n_wg, sc.n_users());
  for (std::size_t n = 0; n < n_wg; ++n) {
    const RVec xs = layout.x.col(static_cast<Eigen::Index>(n));
    const CVec g = inwaveguide_vector(xs, sc.ladder, sc.beta_g);
    for (std::size_t k = 0; k < sc.n_users(); ++k) {
      if (dh[k].size() != n_ant * static_cast<Eigen::Index>(n_wg))
        throw std::invalid_argument("effective_channel_perturbed: error vector length must be N*M");
      const CVec h = free_space_vector(sc, k, n, xs) +
                     dh[k].segment(static_cast<Eigen::Index>(n) * n_ant, n_ant);
      psi(n, k) = g.dot(h);
    }
  }
  return psi;
}

RVec received_sinr(const CMat& psi, const CMat& w, const RVec& noise_powers) {
  const Eigen::Index n_users = psi.cols();
  if (w.rows() != psi.rows() || w.cols() != n_users || noise_powers.size() != n_users)
    throw std::invalid_argument("received_sinr: dimension mismatch");
  // gains(k, i) = |u_k^H w_i|^2
  const RMat gains = (psi.adjoint() * w).cwiseAbs2();
  RVec sinr(n_users);
  for (Eigen::Index k = 0; k < n_users; ++k) {
    double interference = 0.0;
    for (Eigen::Index i = 0; i < n_users; ++i)
      if (i != k) interference += gains(k, i);
    sinr(k) = gains(k, k) / (interference + noise_powers(k));
  }
  return sinr;
}

RVec received_sinr(const CMat& psi, const CMat& w, const std::vector<double>& noise_powers) {
  return received_sinr(psi, w, Eigen::Map<const RVec>(noise_powers.data(),
                                                      static_cast<Eigen::Index>(noise_powers.size())));
}

}  // namespace pass
