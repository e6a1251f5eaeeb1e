// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP candidate-evaluation kernels, plus one full ZF
// design per execution mode.
//
//   bench_kernels [points] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "pass/harness/experiment.hpp"
#include "pass/kernels.hpp"
#include "pass/zfopt.hpp"

using namespace pass;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t points = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

  std::vector<double> user_x{3.0, 17.5, 31.0, 44.2};
  std::vector<double> omega{45.0, 13.0, 10.0, 109.0};
  const double lambda = 0.02;
  const kernels::SlotGeometry geo{user_x, omega, lambda / (4.0 * kPi) * 0.387, 2.0 * kPi / lambda,
                                  1.4 * 2.0 * kPi / lambda};
  std::vector<cplx> target{{1e-4, 2e-5}, {-3e-5, 1e-4}, {2e-5, 2e-5}, {5e-5, -1e-4}};
  CMat minv = CMat::Identity(4, 4) * 1e8;
  CMat t = CMat::Identity(4, 4) * 1e7;
  const kernels::ZfScoreInputs zin{target, &minv, &t};

  std::vector<double> xs(points), out(points);
  for (std::size_t i = 0; i < points; ++i) xs[i] = 50.0 * static_cast<double>(i) / static_cast<double>(points - 1);

  std::printf("threads: %d, candidates: %zu, best of %d\n", omp_get_max_threads(), points, repeats);
  std::printf("%-22s %12s %12s %8s\n", "kernel", "serial ms", "omp ms", "speedup");

  const double rs = best_ms(repeats, [&] { kernels::serial::penalty_residual(geo, target, xs, out); });
  const double ro = best_ms(repeats, [&] { kernels::omp::penalty_residual(geo, target, xs, out); });
  std::printf("%-22s %12.2f %12.2f %8.2f\n", "penalty_residual", rs, ro, rs / ro);

  const double zs = best_ms(repeats, [&] { kernels::serial::zf_score(geo, zin, xs, out); });
  const double zo = best_ms(repeats, [&] { kernels::omp::zf_score(geo, zin, xs, out); });
  std::printf("%-22s %12.2f %12.2f %8.2f\n", "zf_score", zs, zo, zs / zo);

  const harness::ScenarioParams p;
  const Scenario sc = harness::build_scenario(p, coupledmode::PowerModel::kEqual,
                                              harness::Activation::kContinuous, harness::drop_users(p, 1, 0));
  zfopt::ZfOptions serial_opts, omp_opts;
  serial_opts.exec = kernels::Exec::kSerial;
  omp_opts.exec = kernels::Exec::kParallel;
  double ps = 0.0, po = 0.0;
  const double ds = best_ms(1, [&] { ps = zfopt::solve(sc, serial_opts).total_power; });
  const double dp = best_ms(1, [&] { po = zfopt::solve(sc, omp_opts).total_power; });
  std::printf("%-22s %12.2f %12.2f %8.2f\n", "zf design (1e5 grid)", ds, dp, ds / dp);
  std::printf("zf power serial %.9e W, omp %.9e W (%s)\n", ps, po, ps == po ? "identical" : "DIFFERENT");
  return ps == po ? 0 : 1;
}
