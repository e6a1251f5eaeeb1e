// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference for two users and two transmit antennas: beam
// directions on a grid of the complex unit sphere, minimal powers for fixed
// directions from the 2 x 2 tightness system, then a shrinking pattern search.
#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "pass/types.hpp"

namespace testing {

struct BruteForce2x2 {
  const pass::CMat& u;  // 2 x 2, column k = channel of user k
  std::array<double, 2> gamma;
  std::array<double, 2> noise;

  static pass::CVec direction(double theta, double phi) {
    pass::CVec d(2);
    d << std::cos(theta), std::sin(theta) * std::exp(pass::cplx(0.0, phi));
    return d;
  }

  // Total power for fixed directions; +inf if the targets are unreachable.
  double power(const std::array<double, 4>& a) const {
    const pass::CVec d0 = direction(a[0], a[1]);
    const pass::CVec d1 = direction(a[2], a[3]);
    const double g00 = std::norm(u.col(0).dot(d0)), g01 = std::norm(u.col(0).dot(d1));
    const double g11 = std::norm(u.col(1).dot(d1)), g10 = std::norm(u.col(1).dot(d0));
    // [g00/gamma0, -g01; -g10, g11/gamma1] p = noise
    const double a11 = g00 / gamma[0], a12 = -g01, a21 = -g10, a22 = g11 / gamma[1];
    const double det = a11 * a22 - a12 * a21;
    if (det <= 0.0) return std::numeric_limits<double>::infinity();
    const double p0 = (a22 * noise[0] - a12 * noise[1]) / det;
    const double p1 = (a11 * noise[1] - a21 * noise[0]) / det;
    if (p0 <= 0.0 || p1 <= 0.0) return std::numeric_limits<double>::infinity();
    return p0 + p1;
  }

  double solve(int theta_points = 40, int phi_points = 72) const {
    std::array<double, 4> best{}, a{};
    double best_p = std::numeric_limits<double>::infinity();
    const double dt = 0.5 * pass::kPi / (theta_points - 1);
    const double dp = 2.0 * pass::kPi / phi_points;
    for (int i0 = 0; i0 < theta_points; ++i0)
      for (int j0 = 0; j0 < phi_points; ++j0)
        for (int i1 = 0; i1 < theta_points; ++i1)
          for (int j1 = 0; j1 < phi_points; ++j1) {
            a = {i0 * dt, j0 * dp, i1 * dt, j1 * dp};
            const double p = power(a);
            if (p < best_p) {
              best_p = p;
              best = a;
            }
          }
    std::array<double, 4> step{dt, dp, dt, dp};
    for (int round = 0; round < 60; ++round) {
      bool improved = false;
      for (int c = 0; c < 4; ++c) {
        for (double s : {-1.0, 1.0}) {
          a = best;
          a[c] += s * step[c];
          const double p = power(a);
          if (p < best_p) {
            best_p = p;
            best = a;
            improved = true;
          }
        }
      }
      if (!improved)
        for (double& s : step) s *= 0.5;
    }
    return best_p;
  }
};

}  // namespace testing
