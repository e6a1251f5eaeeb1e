// SPDX-License-Identifier: Apache-2.0
#include "pass/zfopt.hpp"

#include <cmath>
#include <limits>

#include "pass/search.hpp"

namespace pass::zfopt {

namespace {

// Inverse of a Hermitian positive-definite matrix, or nothing when its
// condition number exceeds the limit.
bool hermitian_inverse(const CMat& g, double max_condition, CMat& inv) {
  const Eigen::SelfAdjointEigenSolver<CMat> es(g);
  const RVec& ev = es.eigenvalues();
  if (!(ev.minCoeff() > 0.0) || ev.maxCoeff() / ev.minCoeff() > max_condition) return false;
  inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  return true;
}

constexpr double kMaxCondition = 1e12;

}  // namespace

RVec optimal_powers(const std::vector<double>& gammas, const std::vector<double>& noise_powers) {
  if (gammas.size() != noise_powers.size())
    throw std::invalid_argument("optimal_powers: size mismatch");
  RVec p(static_cast<Eigen::Index>(gammas.size()));
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 0.0) || !(noise_powers[k] > 0.0))
      throw std::invalid_argument("optimal_powers: gamma and noise must be > 0");
    p(static_cast<Eigen::Index>(k)) = gammas[k] * noise_powers[k];
  }
  return p;
}

double zf_objective(const CMat& psi, const RVec& powers) {
  CMat inv;
  if (!hermitian_inverse(psi.adjoint() * psi, kMaxCondition, inv))
    throw SingularChannel("zf_objective: Psi^H Psi is singular");
  return (inv.diagonal().real().array() * powers.array()).sum();
}

CMat zf_matrix(const CMat& psi, const RVec& powers) {
  CMat inv;
  if (!hermitian_inverse(psi.adjoint() * psi, kMaxCondition, inv))
    throw SingularChannel("zf_matrix: Psi^H Psi is singular");
  return psi * inv * powers.cwiseSqrt().asDiagonal();
}

PinchingLayout initial_layout(const Scenario& sc) {
  const std::size_t n_ant = sc.n_antennas;
  const FeasibleSet& fs = sc.feasible;
  PinchingLayout layout;
  layout.x.resize(static_cast<Eigen::Index>(n_ant), static_cast<Eigen::Index>(sc.n_waveguides()));

  RVec column(static_cast<Eigen::Index>(n_ant));
  for (std::size_t m = 0; m < n_ant; ++m)
    column(static_cast<Eigen::Index>(m)) =
        (static_cast<double>(m) + 0.5) * fs.x_max / static_cast<double>(n_ant);

  if (fs.is_discrete()) {
    const double step = fs.x_max / static_cast<double>(fs.q_points - 1);
    const double tol = search::grid_tolerance(fs);
    long prev = -1;
    for (std::size_t m = 0; m < n_ant; ++m) {
      auto i = std::lround(column(static_cast<Eigen::Index>(m)) / step);
      if (prev >= 0) {
        const double need = fs.grid_value(static_cast<std::size_t>(prev), fs.q_points) + sc.min_spacing;
        if (fs.grid_value(static_cast<std::size_t>(i), fs.q_points) < need - tol)
          i = static_cast<long>(std::ceil((need - tol) / step));
      }
      if (i > static_cast<long>(fs.q_points) - 1)
        throw std::invalid_argument("initial_layout: antennas do not fit on the discrete grid");
      column(static_cast<Eigen::Index>(m)) = fs.grid_value(static_cast<std::size_t>(i), fs.q_points);
      prev = i;
    }
  }
  for (Eigen::Index n = 0; n < layout.x.cols(); ++n) layout.x.col(n) = column;
  validate_layout(sc, layout);
  return layout;
}

ZfSolution sweep_positions(const Scenario& sc, const PinchingLayout& init, const ZfOptions& options) {
  sc.validate();
  validate_layout(sc, init);

  const std::size_t n_wg = sc.n_waveguides();
  const std::size_t n_ant = sc.n_antennas;
  const std::size_t n_users = sc.n_users();
  const auto kk = static_cast<Eigen::Index>(n_users);
  const FeasibleSet& fs = sc.feasible;
  const std::size_t points = search::grid_size(fs, options.grid_points);
  const bool refine = options.refine && !fs.is_discrete();

  ZfSolution sol;
  sol.powers = optimal_powers(sc.sinr_targets, sc.noise_powers);
  sol.x = init;

  EffectiveChannel ch = effective_channel(sc, sol.x);
  double objective = zf_objective(ch.psi, sol.powers);
  sol.trace.push_back(objective);

  std::vector<double> user_x(n_users);
  for (std::size_t k = 0; k < n_users; ++k) user_x[k] = sc.users[k].x - sc.waveguide_x0;
  std::vector<double> omega(n_users);
  std::vector<cplx> a_base(n_users);
  search::Workspace ws;
  const RVec& powers = sol.powers;
  bool warned_fallback = false;

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (std::size_t n = 0; n < n_wg; ++n) {
      const auto nn = static_cast<Eigen::Index>(n);
      for (std::size_t k = 0; k < n_users; ++k) omega[k] = sc.omega(k, n);

      // B_n B_n^H from every row of Psi except n; it stays fixed while the
      // antennas of waveguide n move.
      CMat bbh = CMat::Zero(kk, kk);
      for (std::size_t r = 0; r < n_wg; ++r) {
        if (r == n) continue;
        const CVec a = ch.psi.row(static_cast<Eigen::Index>(r)).adjoint();
        bbh.noalias() += a * a.adjoint();
      }
      CMat minv;
      const bool fast = hermitian_inverse(bbh, kMaxCondition, minv);
      CMat t;
      double base_trace = 0.0;
      if (fast) {
        t = minv * powers.asDiagonal() * minv;
        base_trace = (minv.diagonal().real().array() * powers.array()).sum();
      } else if (!warned_fallback) {
        sol.used_direct_fallback = true;
        sol.warnings.emplace_back("B_n B_n^H is singular (N - 1 < K); using direct inversion");
        warned_fallback = true;
      }

      for (std::size_t m = 0; m < n_ant; ++m) {
        const auto mm = static_cast<Eigen::Index>(m);
        for (std::size_t k = 0; k < n_users; ++k) {
          const auto kx = static_cast<Eigen::Index>(k);
          a_base[k] = std::conj(ch.psi(nn, kx) - ch.phis[m](nn, kx));
        }
        const kernels::SlotGeometry geom{user_x, omega, sc.eta * sc.ladder.alphas[m], sc.beta0,
                                         sc.beta_g};
        const search::Interval iv =
            search::neighbor_interval(sol.x.x, m, n, sc.min_spacing, fs.x_max);

        search::Outcome outcome;
        if (fast) {
          const kernels::ZfScoreInputs in{a_base, &minv, &t};
          auto batch = [&](std::span<const double> xs, std::span<double> out) {
            kernels::zf_score(options.exec, geom, in, xs, out);
            for (double& v : out) v = -v;
          };
          auto scalar = [&](double x) { return -kernels::zf_score_at(geom, in, x); };
          outcome = search::minimize_coordinate(batch, scalar, fs, points, iv, sol.x.x(mm, nn),
                                                refine, ws);
        } else {
          auto scalar = [&](double x) {
            CVec a(kk);
            for (std::size_t k = 0; k < n_users; ++k)
              a(static_cast<Eigen::Index>(k)) = a_base[k] + std::conj(kernels::slot_entry(geom, k, x));
            CMat inv;
            if (!hermitian_inverse(bbh + a * a.adjoint(), kMaxCondition, inv))
              return std::numeric_limits<double>::infinity();
            return (inv.diagonal().real().array() * powers.array()).sum();
          };
          auto batch = [&](std::span<const double> xs, std::span<double> out) {
            for (std::size_t i = 0; i < xs.size(); ++i) out[i] = scalar(xs[i]);
          };
          outcome = search::minimize_coordinate(batch, scalar, fs, points, iv, sol.x.x(mm, nn),
                                                refine, ws);
        }

        if (outcome.empty) {
          sol.warnings.emplace_back("empty search set at waveguide " + std::to_string(n) +
                                    ", antenna " + std::to_string(m));
          continue;
        }
        if (!outcome.moved) continue;

        sol.x.x(mm, nn) = outcome.x;
        for (std::size_t k = 0; k < n_users; ++k) {
          const auto kx = static_cast<Eigen::Index>(k);
          const cplx entry = kernels::slot_entry(geom, k, outcome.x);
          ch.psi(nn, kx) += entry - ch.phis[m](nn, kx);
          ch.phis[m](nn, kx) = entry;
        }
        if (fast) {
          const double predicted = base_trace + outcome.value;  // value = -score
          const double direct = zf_objective(ch.psi, powers);
          sol.max_rank_one_mismatch =
              std::max(sol.max_rank_one_mismatch, std::abs(predicted - direct) / direct);
        }
      }
    }

    // Re-sum Psi from its parts to stop incremental round-off from drifting.
    ch.psi.setZero();
    for (const CMat& phi : ch.phis) ch.psi += phi;

    const double next = zf_objective(ch.psi, powers);
    sol.trace.push_back(next);
    sol.iterations = sweep + 1;
    const double decrease = (objective - next) / objective;
    objective = next;
    if (decrease < options.threshold) {
      sol.converged = true;
      break;
    }
  }

  sol.w = zf_matrix(ch.psi, powers);
  sol.total_power = sol.w.squaredNorm();
  return sol;
}

}  // namespace pass::zfopt
