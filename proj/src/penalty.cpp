// SPDX-License-Identifier: Apache-2.0
#include "pass/penalty.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "pass/search.hpp"

namespace pass::penalty {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMat sum_of(const std::vector<CMat>& parts, Eigen::Index rows, Eigen::Index cols) {
  CMat total = CMat::Zero(rows, cols);
  for (const CMat& p : parts) total += p;
  return total;
}

}  // namespace

void PenaltyParams::validate() const {
  if (!(rho0 > 0.0)) throw std::invalid_argument("penalty: rho0 must be > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("penalty: epsilon must lie in (0,1)");
  if (!(inner_tol > 0.0) || !(violation_tol > 0.0))
    throw std::invalid_argument("penalty: tolerances must be > 0");
  if (max_inner < 1 || max_outer < 1 || max_x_sweeps < 1)
    throw std::invalid_argument("penalty: iteration limits must be >= 1");
  if (!(power_unit_w > 0.0) || channel_scale < 0.0)
    throw std::invalid_argument("penalty: invalid unit scaling");
}

// ---------------------------------------------------------------------------
// UserProjector
//
// In the eigenbasis of Q the stationarity condition of
//   min ||u - c||^2 + mu (u^H Q u - 2 Re(b^H u) + d + sigma2/p)
// decouples: u_i(mu) = (c_i + mu b_i) / (1 + mu lambda_i). The constraint
// value along this path is non-increasing in mu, so the active multiplier is
// found by bracketing and a TOMS 748 root solve.

UserProjector::UserProjector(const CMat& q, const CVec& b, double d, const CVec& c, double sigma2)
    : d_(d), sigma2_(sigma2) {
  const Eigen::SelfAdjointEigenSolver<CMat> es(q);
  evecs_ = es.eigenvectors();
  evals_ = es.eigenvalues().cwiseMax(0.0);
  b_t_ = evecs_.adjoint() * b;
  c_t_ = evecs_.adjoint() * c;

  // inf_u u^H Q u - 2 Re(b^H u) + d; unbounded below when b leaks into null(Q).
  const double lmax = evals_.size() ? evals_.maxCoeff() : 0.0;
  const double bnorm = b.norm();
  double floor_value = d;
  bool unbounded = false;
  for (Eigen::Index i = 0; i < evals_.size(); ++i) {
    const double bi2 = std::norm(b_t_(i));
    if (evals_(i) <= 1e-12 * lmax || lmax == 0.0) {
      if (std::sqrt(bi2) > 1e-12 * bnorm && bnorm > 0.0) unbounded = true;
    } else {
      floor_value -= bi2 / evals_(i);
    }
  }
  if (unbounded)
    p_min_ = 0.0;
  else if (floor_value < 0.0)
    p_min_ = sigma2_ / -floor_value;
  else
    p_min_ = kInf;
}

CVec UserProjector::solution(double mu) const {
  CVec ut(c_t_.size());
  for (Eigen::Index i = 0; i < ut.size(); ++i) ut(i) = (c_t_(i) + mu * b_t_(i)) / (1.0 + mu * evals_(i));
  return ut;
}

double UserProjector::constraint(const CVec& ut, double p) const {
  double value = d_ + sigma2_ / p;
  for (Eigen::Index i = 0; i < ut.size(); ++i)
    value += evals_(i) * std::norm(ut(i)) - 2.0 * (std::conj(b_t_(i)) * ut(i)).real();
  return value;
}

ProjectionResult UserProjector::project(double p) const {
  ProjectionResult res;
  auto finish = [&](double mu) {
    const CVec ut = solution(mu);
    res.mu = mu;
    res.u = evecs_ * ut;
    res.distance2 = (ut - c_t_).squaredNorm();
    return res;
  };

  auto g = [&](double mu) { return constraint(solution(mu), p); };
  if (g(0.0) <= 0.0) return finish(0.0);
  if (!(p > p_min_)) {
    res.feasible = false;
    res.distance2 = kInf;
    return res;
  }

  double lo = 0.0;
  double hi = 1.0;
  double g_hi = g(hi);
  while (g_hi > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) {
      res.feasible = false;
      res.distance2 = kInf;
      return res;
    }
    g_hi = g(hi);
  }
  if (g_hi == 0.0) return finish(hi);

  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, g(lo), g_hi,
                                                        boost::math::tools::eps_tolerance<double>(50),
                                                        iters);
  // keep the feasible end of the bracket
  return finish(g(a) <= 0.0 ? a : b);
}

// ---------------------------------------------------------------------------

PenaltySolver::PenaltySolver(const Scenario& sc, PenaltyParams params)
    : sc_(sc), params_(std::move(params)) {
  sc_.validate();
  params_.validate();
  scale_ = params_.channel_scale > 0.0 ? params_.channel_scale : 1.0 / sc_.eta;
  const auto kk = static_cast<Eigen::Index>(sc_.n_users());
  noise_.resize(kk);
  gammas_.resize(kk);
  for (Eigen::Index k = 0; k < kk; ++k) {
    // SINR is invariant when the channel is scaled by s and noise by s^2.
    noise_(k) = sc_.noise_powers[static_cast<std::size_t>(k)] * scale_ * scale_ / params_.power_unit_w;
    gammas_(k) = sc_.sinr_targets[static_cast<std::size_t>(k)];
  }
}

std::vector<CMat> PenaltySolver::scaled_phis(const PinchingLayout& x) const {
  std::vector<CMat> phis = effective_channel(sc_, x).phis;
  for (CMat& p : phis) p *= scale_;
  return phis;
}

PenaltyState PenaltySolver::initial_state(const PinchingLayout& x, double rho) const {
  PenaltyState s;
  s.x = x;
  s.u_parts = scaled_phis(x);
  s.u = sum_of(s.u_parts, static_cast<Eigen::Index>(sc_.n_waveguides()),
               static_cast<Eigen::Index>(sc_.n_users()));
  s.rho = rho;
  update_v(s, false);
  return s;
}

double PenaltySolver::position_residual(const PenaltyState& s) const {
  const std::vector<CMat> phis = scaled_phis(s.x);
  double r = 0.0;
  for (std::size_t m = 0; m < phis.size(); ++m) r += (s.u_parts[m] - phis[m]).squaredNorm();
  return r;
}

double PenaltySolver::objective(const PenaltyState& s) const {
  const CMat gap = s.u - sum_of(s.u_parts, s.u.rows(), s.u.cols());
  return s.p + (gap.squaredNorm() + position_residual(s)) / s.rho;
}

double PenaltySolver::violation(const PenaltyState& s) const {
  double eps = max_abs(s.u - sum_of(s.u_parts, s.u.rows(), s.u.cols()));
  const std::vector<CMat> phis = scaled_phis(s.x);
  for (std::size_t m = 0; m < phis.size(); ++m) eps = std::max(eps, max_abs(s.u_parts[m] - phis[m]));
  return eps;
}

void PenaltySolver::update_v(PenaltyState& s, bool keep_incumbent) const {
  const txbf::PowerMinResult r = txbf::solve_powermin(s.u, gammas_, noise_);
  const double p_new = r.w.squaredNorm();
  if (keep_incumbent && !(p_new < s.p)) return;
  s.v = r.w / std::sqrt(p_new);
  s.p = p_new;
}

void PenaltySolver::update_u(PenaltyState& s) const {
  const Eigen::Index kk = s.u.cols();
  const CMat target = sum_of(s.u_parts, s.u.rows(), kk);  // c_k are its columns
  const double incumbent = s.p + (s.u - target).squaredNorm() / s.rho;

  auto build = [&](Eigen::Index k, const CVec& ut) {
    CMat q = CMat::Zero(s.v.rows(), s.v.rows());
    for (Eigen::Index i = 0; i < kk; ++i)
      if (i != k) q.noalias() += s.v.col(i) * s.v.col(i).adjoint();
    const cplx t = s.v.col(k).dot(ut);  // v_k^H u_k^t
    const CVec b = s.v.col(k) * (t / gammas_(k));
    const double d = std::norm(t) / gammas_(k);
    return UserProjector(q, b, d, target.col(k), noise_(k));
  };

  const double p_hi = 1e4 * s.p;
  std::vector<UserProjector> proj;
  proj.reserve(static_cast<std::size_t>(kk));
  double p_feas = 0.0;
  const CMat psi_scaled = sum_of(scaled_phis(s.x), s.u.rows(), kk);
  for (Eigen::Index k = 0; k < kk; ++k) {
    UserProjector pk = build(k, s.u.col(k));
    if (!(pk.min_feasible_power() < p_hi)) {
      // Linearisation point lost the desired signal; restart it from the channel.
      pk = build(k, psi_scaled.col(k));
      warnings_.emplace_back("update_u: linearisation stalled for user " + std::to_string(k) +
                             "; restarted from Psi(X)");
    }
    p_feas = std::max(p_feas, pk.min_feasible_power());
    proj.push_back(std::move(pk));
  }

  const double p_lo = std::max(1e-12, p_feas * (1.0 + 1e-9));
  if (!(p_lo < p_hi)) {
    warnings_.emplace_back("update_u: no feasible transmit power below 1e4 * P; kept incumbent");
    return;
  }

  auto total = [&](double p, CMat* u_out) {
    double dist = 0.0;
    for (Eigen::Index k = 0; k < kk; ++k) {
      const ProjectionResult r = proj[static_cast<std::size_t>(k)].project(p);
      if (!r.feasible) return kInf;
      dist += r.distance2;
      if (u_out) u_out->col(k) = r.u;
    }
    return p + dist / s.rho;
  };

  // The partial minimum over U is convex in P, hence unimodal in log P.
  auto in_log = [&](double lp) { return total(std::exp(lp), nullptr); };
  std::uintmax_t iters = 200;
  auto [best_lp, best_val] =
      boost::math::tools::brent_find_minima(in_log, std::log(p_lo), std::log(p_hi), 24, iters);
  double best_p = std::exp(best_lp);
  if (s.p > p_lo) {
    const double at_incumbent = total(s.p, nullptr);
    if (at_incumbent < best_val) {
      best_val = at_incumbent;
      best_p = s.p;
    }
  }
  if (!(best_val < incumbent)) return;

  CMat u_new(s.u.rows(), kk);
  total(best_p, &u_new);
  s.u = std::move(u_new);
  s.p = best_p;
}

void PenaltySolver::update_u_parts(PenaltyState& s) const {
  const std::vector<CMat> phis = scaled_phis(s.x);
  const CMat shift = (s.u - sum_of(phis, s.u.rows(), s.u.cols())) / static_cast<double>(phis.size() + 1);
  for (std::size_t m = 0; m < phis.size(); ++m) s.u_parts[m] = phis[m] + shift;
}

void PenaltySolver::update_x(PenaltyState& s) const {
  const std::size_t n_wg = sc_.n_waveguides();
  const std::size_t n_ant = sc_.n_antennas;
  const std::size_t n_users = sc_.n_users();
  const FeasibleSet& fs = sc_.feasible;
  const std::size_t points = search::grid_size(fs, params_.grid_points);
  const bool refine = params_.refine && !fs.is_discrete();

  std::vector<double> user_x(n_users);
  for (std::size_t k = 0; k < n_users; ++k) user_x[k] = sc_.users[k].x - sc_.waveguide_x0;
  std::vector<double> omega(n_users);
  std::vector<cplx> target(n_users);
  search::Workspace ws;

  double residual = position_residual(s);
  for (int sweep = 0; sweep < params_.max_x_sweeps; ++sweep) {
    for (std::size_t n = 0; n < n_wg; ++n) {
      const auto nn = static_cast<Eigen::Index>(n);
      for (std::size_t k = 0; k < n_users; ++k) omega[k] = sc_.omega(k, n);
      for (std::size_t m = 0; m < n_ant; ++m) {
        const auto mm = static_cast<Eigen::Index>(m);
        for (std::size_t k = 0; k < n_users; ++k)
          target[k] = s.u_parts[m](nn, static_cast<Eigen::Index>(k));
        const kernels::SlotGeometry geom{user_x, omega, scale_ * sc_.eta * sc_.ladder.alphas[m],
                                         sc_.beta0, sc_.beta_g};
        auto batch = [&](std::span<const double> xs, std::span<double> out) {
          kernels::penalty_residual(params_.exec, geom, target, xs, out);
        };
        auto scalar = [&](double x) { return kernels::residual_at(geom, target, x); };
        const search::Interval iv = search::neighbor_interval(s.x.x, m, n, sc_.min_spacing, fs.x_max);
        const search::Outcome o =
            search::minimize_coordinate(batch, scalar, fs, points, iv, s.x.x(mm, nn), refine, ws);
        if (o.empty) {
          warnings_.emplace_back("update_x: empty search set at waveguide " + std::to_string(n) +
                                 ", antenna " + std::to_string(m));
          continue;
        }
        if (o.moved) s.x.x(mm, nn) = o.x;
      }
    }
    const double next = position_residual(s);
    const double decrease = residual > 0.0 ? (residual - next) / residual : 0.0;
    residual = next;
    if (decrease < params_.x_threshold) break;
  }
}

PenaltyReport PenaltySolver::run(const PinchingLayout& init_x) const {
  validate_layout(sc_, init_x);
  warnings_.clear();

  PenaltyReport rep;
  PenaltyState s = initial_state(init_x, params_.rho0);

  for (int outer = 0; outer < params_.max_outer; ++outer) {
    rep.outer_iterations = outer + 1;
    for (int inner = 0; inner < params_.max_inner; ++inner) {
      BlockObjectives b{};
      b[0] = objective(s);
      update_v(s);
      b[1] = objective(s);
      update_u(s);
      b[2] = objective(s);
      update_u_parts(s);
      b[3] = objective(s);
      update_x(s);
      b[4] = objective(s);
      rep.blocks.push_back(b);
      rep.trace.push_back({outer, inner, s.p * params_.power_unit_w, violation(s)});
      ++rep.inner_iterations;
      if (b[0] - b[4] <= params_.inner_tol * std::abs(b[0])) break;
    }
    rep.violation = violation(s);
    if (rep.violation < params_.violation_tol) {
      rep.converged = true;
      break;
    }
    s.rho *= params_.epsilon;
  }

  // Final beamformer on the true channel of the final layout.
  const CMat psi = effective_channel(sc_, s.x).psi;
  const auto kk = static_cast<Eigen::Index>(sc_.n_users());
  const RVec noise = Eigen::Map<const RVec>(sc_.noise_powers.data(), kk);
  const txbf::PowerMinResult polished = txbf::solve_powermin(psi, gammas_, noise);
  rep.w = polished.w;
  rep.x = s.x;
  rep.total_power = polished.total_power;
  rep.achieved_sinrs = polished.achieved_sinrs;
  rep.warnings = warnings_;
  return rep;
}

}  // namespace pass::penalty
