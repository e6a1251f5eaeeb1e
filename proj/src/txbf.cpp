// SPDX-License-Identifier: Apache-2.0
#include "pass/txbf.hpp"

#include <cmath>
#include <string>

namespace pass::txbf {

PowerMinResult solve_powermin(const CMat& channels, const RVec& gammas, const RVec& noise_powers,
                              const PowerMinOptions& options) {
  const Eigen::Index n_tx = channels.rows();
  const Eigen::Index n_users = channels.cols();
  if (n_users < 1 || n_users > n_tx) throw std::invalid_argument("solve_powermin: need 1 <= K <= N");
  if (gammas.size() != n_users || noise_powers.size() != n_users)
    throw std::invalid_argument("solve_powermin: gamma/noise length must equal K");
  for (Eigen::Index k = 0; k < n_users; ++k) {
    if (!(gammas(k) > 0.0) || !(noise_powers(k) > 0.0))
      throw std::invalid_argument("solve_powermin: gamma and noise must be > 0");
    if (channels.col(k).squaredNorm() == 0.0)
      throw InfeasibleInstance("solve_powermin: user " + std::to_string(k) + " has a zero channel");
  }

  CMat v(n_tx, n_users);
  for (Eigen::Index k = 0; k < n_users; ++k) v.col(k) = channels.col(k) / std::sqrt(noise_powers(k));

  {
    // Rank check on the column-normalised Gram matrix.
    CMat vn = v;
    for (Eigen::Index k = 0; k < n_users; ++k) vn.col(k).normalize();
    const RVec ev = Eigen::SelfAdjointEigenSolver<CMat>(vn.adjoint() * vn, Eigen::EigenvaluesOnly)
                        .eigenvalues();
    if (!(ev.minCoeff() > 0.0) || ev.maxCoeff() / ev.minCoeff() > options.max_condition)
      throw InfeasibleInstance("solve_powermin: channels are (numerically) linearly dependent");
  }

  PowerMinResult res;
  RVec q(n_users);
  for (Eigen::Index k = 0; k < n_users; ++k) q(k) = gammas(k) / v.col(k).squaredNorm();

  const CMat eye = CMat::Identity(n_tx, n_tx);
  auto filter_matrix = [&](const RVec& dual) {
    CMat a = eye;
    for (Eigen::Index i = 0; i < n_users; ++i) a.noalias() += dual(i) * v.col(i) * v.col(i).adjoint();
    return a;
  };

  for (res.iterations = 1; res.iterations <= options.max_iters; ++res.iterations) {
    const Eigen::LLT<CMat> llt(filter_matrix(q));
    const CMat ainv_v = llt.solve(v);
    RVec next(n_users);
    double change = 0.0;
    for (Eigen::Index k = 0; k < n_users; ++k) {
      // v^H (A - q v v^H)^{-1} v = s / (1 - q s) with s = v^H A^{-1} v
      const double s = v.col(k).dot(ainv_v.col(k)).real();
      next(k) = gammas(k) * (1.0 - q(k) * s) / s;
      change = std::max(change, std::abs(next(k) - q(k)) / next(k));
    }
    if (!next.allFinite() || next.maxCoeff() > 1e300 || !(next.minCoeff() > 0.0))
      throw InfeasibleInstance("solve_powermin: dual fixed point diverged");
    q = next;
    if (change < options.tol) {
      res.converged = true;
      break;
    }
  }
  if (res.iterations > options.max_iters) res.iterations = options.max_iters;

  // Beam directions.
  const CMat dirs_raw = Eigen::LLT<CMat>(filter_matrix(q)).solve(v);
  CMat dirs(n_tx, n_users);
  for (Eigen::Index k = 0; k < n_users; ++k) dirs.col(k) = dirs_raw.col(k).normalized();

  // Downlink powers: gains(k,i) = |u_k^H w_i|^2 for unit w_i.
  const RMat gains = (channels.adjoint() * dirs).cwiseAbs2();
  RMat f(n_users, n_users);
  for (Eigen::Index k = 0; k < n_users; ++k)
    for (Eigen::Index i = 0; i < n_users; ++i)
      f(k, i) = (i == k) ? gains(k, k) / gammas(k) : -gains(k, i);
  const RVec p = f.partialPivLu().solve(noise_powers);
  if (!p.allFinite() || !(p.minCoeff() > 0.0))
    throw InfeasibleInstance("solve_powermin: downlink power system has no positive solution");

  res.w.resize(n_tx, n_users);
  for (Eigen::Index k = 0; k < n_users; ++k) res.w.col(k) = std::sqrt(p(k)) * dirs.col(k);
  res.total_power = p.sum();
  res.dual_powers = q;

  const RMat g2 = (channels.adjoint() * res.w).cwiseAbs2();
  res.achieved_sinrs.resize(n_users);
  for (Eigen::Index k = 0; k < n_users; ++k) {
    double interference = 0.0;
    for (Eigen::Index i = 0; i < n_users; ++i)
      if (i != k) interference += g2(k, i);
    res.achieved_sinrs(k) = g2(k, k) / (interference + noise_powers(k));
  }
  return res;
}

}  // namespace pass::txbf
