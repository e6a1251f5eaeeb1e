// SPDX-License-Identifier: Apache-2.0
//
// Candidate-evaluation kernels for the one-dimensional antenna position
// searches. Each kernel scores a batch of candidate positions for a single
// antenna; candidates are independent, so the loop is data-parallel.
//
// kernels::serial is the reference implementation kept for testing;
// kernels::omp is the OpenMP version used by the solvers. Both evaluate the
// same per-candidate expression and must agree bit for bit.
#pragma once

#include <cmath>
#include <span>

#include "pass/types.hpp"

namespace pass::kernels {

enum class Exec { kSerial, kParallel };

/// Per-antenna geometry of one (waveguide, antenna) slot seen by all K users.
struct SlotGeometry {
  std::span<const double> user_x;  ///< user x minus the waveguide origin, size K
  std::span<const double> omega;   ///< omega_{k,n}, size K
  double gain = 0.0;               ///< eta * alpha_m (times any channel scale)
  double beta0 = 0.0;
  double beta_g = 0.0;
};

/// Contribution of the antenna at local x to Psi_{n,k}:
///   gain / r * exp(j (beta0 r + beta_g x)),  r = sqrt((x - user_x)^2 + omega).
inline cplx slot_entry(const SlotGeometry& g, std::size_t k, double x) {
  const double dx = x - g.user_x[k];
  const double r = std::sqrt(dx * dx + g.omega[k]);
  const double phase = g.beta0 * r + g.beta_g * x;
  return cplx(std::cos(phase), std::sin(phase)) * (g.gain / r);
}

/// Residual of the penalty position subproblem:
///   f(x) = sum_k |target_k - slot_entry(k, x)|^2.
inline double residual_at(const SlotGeometry& g, std::span<const cplx> target, double x) {
  double f = 0.0;
  for (std::size_t k = 0; k < target.size(); ++k) f += std::norm(target[k] - slot_entry(g, k, x));
  return f;
}

/// Sherman-Morrison score of the ZF position subproblem with
///   a(x) = a_base + conj(slot_entry(., x)),
///   score = a^H T a / (1 + a^H Minv a),   T = Minv P Minv.
/// Larger is better: the ZF power equals tr(Minv P) - score.
struct ZfScoreInputs {
  std::span<const cplx> a_base;  ///< size K
  const CMat* minv = nullptr;    ///< (B B^H)^{-1}, K x K
  const CMat* t = nullptr;       ///< Minv P Minv, K x K
};

double zf_score_at(const SlotGeometry& g, const ZfScoreInputs& in, double x);

namespace serial {
void penalty_residual(const SlotGeometry& g, std::span<const cplx> target,
                      std::span<const double> xs, std::span<double> out);
void zf_score(const SlotGeometry& g, const ZfScoreInputs& in, std::span<const double> xs,
              std::span<double> out);
}  // namespace serial

namespace omp {
void penalty_residual(const SlotGeometry& g, std::span<const cplx> target,
                      std::span<const double> xs, std::span<double> out);
void zf_score(const SlotGeometry& g, const ZfScoreInputs& in, std::span<const double> xs,
              std::span<double> out);
}  // namespace omp

inline void penalty_residual(Exec exec, const SlotGeometry& g, std::span<const cplx> target,
                             std::span<const double> xs, std::span<double> out) {
  if (exec == Exec::kParallel)
    omp::penalty_residual(g, target, xs, out);
  else
    serial::penalty_residual(g, target, xs, out);
}

inline void zf_score(Exec exec, const SlotGeometry& g, const ZfScoreInputs& in,
                     std::span<const double> xs, std::span<double> out) {
  if (exec == Exec::kParallel)
    omp::zf_score(g, in, xs, out);
  else
    serial::zf_score(g, in, xs, out);
}

}  // namespace pass::kernels
