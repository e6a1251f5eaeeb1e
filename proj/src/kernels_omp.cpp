// SPDX-License-Identifier: Apache-2.0
#include <cstdint>

#include "pass/kernels.hpp"

namespace pass::kernels::omp {

void penalty_residual(const SlotGeometry& g, std::span<const cplx> target,
                      std::span<const double> xs, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = residual_at(g, target, xs[i]);
}

void zf_score(const SlotGeometry& g, const ZfScoreInputs& in, std::span<const double> xs,
              std::span<double> out) {
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = zf_score_at(g, in, xs[i]);
}

}  // namespace pass::kernels::omp
