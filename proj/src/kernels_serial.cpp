// SPDX-License-Identifier: Apache-2.0
#include <vector>

#include "pass/kernels.hpp"

namespace pass::kernels {

double zf_score_at(const SlotGeometry& g, const ZfScoreInputs& in, double x) {
  const std::size_t n_users = in.a_base.size();
  // K is small (a handful of users); a fixed-size stack buffer avoids heap
  // traffic in the hot loop.
  constexpr std::size_t kStack = 16;
  cplx stack_buf[kStack];
  std::vector<cplx> heap_buf;
  cplx* a = stack_buf;
  if (n_users > kStack) {
    heap_buf.resize(n_users);
    a = heap_buf.data();
  }
  for (std::size_t k = 0; k < n_users; ++k) a[k] = in.a_base[k] + std::conj(slot_entry(g, k, x));

  const CMat& minv = *in.minv;
  const CMat& t = *in.t;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n_users; ++i) {
    cplx ti = 0.0;
    cplx mi = 0.0;
    for (std::size_t j = 0; j < n_users; ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      ti += t(ii, jj) * a[j];
      mi += minv(ii, jj) * a[j];
    }
    num += (std::conj(a[i]) * ti).real();
    den += (std::conj(a[i]) * mi).real();
  }
  return num / (1.0 + den);
}

namespace serial {

void penalty_residual(const SlotGeometry& g, std::span<const cplx> target,
                      std::span<const double> xs, std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = residual_at(g, target, xs[i]);
}

void zf_score(const SlotGeometry& g, const ZfScoreInputs& in, std::span<const double> xs,
              std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = zf_score_at(g, in, xs[i]);
}

}  // namespace serial
}  // namespace pass::kernels
