// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "pass/penalty.hpp"
#include "pass/zfopt.hpp"
#include "test_support.hpp"

using namespace pass;
using namespace pass::penalty;

namespace {

PenaltyParams fast_params(std::size_t points = 2000) {
  PenaltyParams p;
  p.grid_points = points;
  return p;
}

double constraint_value(const CMat& q, const CVec& b, double d, double sigma2, double p, const CVec& u) {
  return u.dot(q * u).real() - 2.0 * b.dot(u).real() + d + sigma2 / p;
}

}  // namespace

TEST_CASE("projection onto a disk (one antenna) matches the closed form") {
  CMat q(1, 1);
  q(0, 0) = 0.3;
  CVec b(1), c(1);
  b(0) = cplx(0.5, 0.2);
  c(0) = cplx(0.1, -0.1);
  const double d = 0.1, sigma2 = 0.2;
  const UserProjector proj(q, b, d, c, sigma2);
  // 0.3 |u - b/0.3|^2 <= |b|^2/0.3 - d - sigma2/p
  CHECK(proj.min_feasible_power() == doctest::Approx(sigma2 / (std::norm(b(0)) / 0.3 - d)).epsilon(1e-12));
  const double p = 1.0;
  const cplx centre = b(0) / 0.3;
  const double radius = std::sqrt((std::norm(b(0)) / 0.3 - d - sigma2 / p) / 0.3);
  const cplx expected = centre + (c(0) - centre) * (radius / std::abs(c(0) - centre));
  const auto r = proj.project(p);
  CHECK(r.feasible);
  CHECK(std::abs(r.u(0) - expected) < 1e-9);
  CHECK(r.mu > 0.0);
  CHECK(r.distance2 == doctest::Approx(std::norm(expected - c(0))).epsilon(1e-9));
  CHECK_FALSE(proj.project(0.5 * proj.min_feasible_power()).feasible);
}

TEST_CASE("inactive constraint returns the anchor") {
  CMat q = CMat::Identity(2, 2) * 0.1;
  CVec b(2), c(2);
  b << 1.0, cplx(0.0, 1.0);
  c << 2.0, cplx(0.0, 2.0);
  const UserProjector proj(q, b, 0.0, c, 0.1);
  const auto r = proj.project(1.0);
  CHECK(r.mu == 0.0);
  CHECK((r.u - c).norm() == 0.0);
}

TEST_CASE("no interference: projection onto a half-space") {
  const CMat q = CMat::Zero(3, 3);
  CVec b(3), c(3);
  b << cplx(1.0, 0.5), 0.2, cplx(0.0, -0.7);
  c << 0.1, cplx(0.0, 0.1), -0.2;
  const double d = 0.3, sigma2 = 0.5, p = 2.0;
  const UserProjector proj(q, b, d, c, sigma2);
  const double viol = d + sigma2 / p - 2.0 * b.dot(c).real();
  REQUIRE(viol > 0.0);
  const CVec expected = c + b * (viol / (2.0 * b.squaredNorm()));
  const auto r = proj.project(p);
  CHECK((r.u - expected).norm() < 1e-9 * expected.norm());
  CHECK(proj.min_feasible_power() == 0.0);
}

TEST_CASE("projection satisfies KKT and beats random feasible points") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  auto rc = [&] { return cplx(n01(rng), n01(rng)); };
  for (int trial = 0; trial < 10; ++trial) {
    CVec v(3);
    for (auto& e : v) e = rc();
    const CMat q = v * v.adjoint() * 0.2;
    CVec b(3), c(3);
    for (auto& e : b) e = 2.0 * rc();
    for (auto& e : c) e = 0.2 * rc();
    const double d = 0.5, sigma2 = 1.0;
    const UserProjector proj(q, b, d, c, sigma2);
    const double p = 1.0 + 2.0 * proj.min_feasible_power();
    const auto r = proj.project(p);
    REQUIRE(r.feasible);
    const double g = constraint_value(q, b, d, sigma2, p, r.u);
    CHECK(g <= 1e-9);
    if (r.mu > 0.0) {
      CHECK(std::abs(g) < 1e-8);
      const CVec stationarity = (r.u - c) + r.mu * (q * r.u - b);
      CHECK(stationarity.norm() < 1e-8 * (1.0 + c.norm()));
    }
    for (int s = 0; s < 2000; ++s) {
      CVec x = r.u;
      for (auto& e : x) e += 0.5 * rc();
      if (constraint_value(q, b, d, sigma2, p, x) <= 0.0) CHECK((x - c).squaredNorm() >= r.distance2 - 1e-12);
    }
  }
}

TEST_CASE("per-antenna parts update is the exact block minimiser") {
  const Scenario sc = testing::small_scenario(3, 3, 2, 6.0, 2);
  const PenaltySolver solver(sc, fast_params());
  PenaltyState s = solver.initial_state(zfopt::initial_layout(sc), 1.0);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  for (Eigen::Index i = 0; i < s.u.size(); ++i) s.u.data()[i] += cplx(n01(rng), n01(rng));
  solver.update_u_parts(s);
  const double best = solver.objective(s);
  for (int trial = 0; trial < 20; ++trial) {
    PenaltyState t = s;
    auto& part = t.u_parts[static_cast<std::size_t>(trial % 3)];
    part(trial % 3, trial % 2) += cplx(1e-3 * n01(rng), 1e-3 * n01(rng));
    CHECK(solver.objective(t) >= best);
  }
}

TEST_CASE("position update never increases the residual") {
  const Scenario sc = testing::small_scenario(3, 3, 2, 6.0, 3);
  const PenaltySolver solver(sc, fast_params());
  PenaltyState s = solver.initial_state(zfopt::initial_layout(sc), 1.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (auto& part : s.u_parts)
    for (Eigen::Index i = 0; i < part.size(); ++i) part.data()[i] *= cplx(1.0 + 0.1 * n01(rng), 0.1 * n01(rng));
  const double before = solver.position_residual(s);
  solver.update_x(s);
  CHECK(solver.position_residual(s) <= before);
  CHECK(is_feasible(sc, s.x));
}

TEST_CASE("full run: monotone blocks, small violation, tight targets") {
  for (std::uint64_t drop = 0; drop < 2; ++drop) {
    const Scenario sc = testing::small_scenario(3, 3, 2, 6.0, drop);
    zfopt::ZfOptions zo;
    zo.grid_points = 2000;
    const auto zf = zfopt::solve(sc, zo);
    const PenaltySolver solver(sc, fast_params());
    const PenaltyReport rep = solver.run(zf.x);
    CHECK(rep.converged);
    CHECK(rep.violation < 1e-3);
    CHECK(is_feasible(sc, rep.x));
    for (const auto& b : rep.blocks)
      for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] <= b[i - 1] * (1.0 + 1e-9) + 1e-15);
    const RVec sinr = received_sinr(effective_channel(sc, rep.x).psi, rep.w, sc.noise_powers);
    for (Eigen::Index k = 0; k < sinr.size(); ++k) CHECK(sinr(k) >= sc.sinr_targets[0] * (1.0 - 1e-6));
    CHECK(std::abs(10.0 * std::log10(rep.total_power / zf.total_power)) <= 1.5);
    REQUIRE_FALSE(rep.trace.empty());
    CHECK(rep.trace.back().violation == doctest::Approx(rep.violation));
  }
}

TEST_CASE("single waveguide and user: penalty design matches the exhaustive optimum") {
  const Scenario sc = testing::small_scenario(1, 2, 1, 2.0, 0);
  zfopt::ZfOptions zo;
  zo.grid_points = 4001;
  const auto zf = zfopt::solve(sc, zo);
  const PenaltySolver solver(sc, fast_params(4001));
  const PenaltyReport rep = solver.run(zf.x);
  double best = std::numeric_limits<double>::infinity();
  PinchingLayout probe{RMat(2, 1)};
  for (int i = 0; i <= 2000; i += 2)
    for (int j = i; j <= 2000; j += 2) {
      probe.x(0, 0) = 1e-3 * i;
      probe.x(1, 0) = 1e-3 * j;
      if (probe.x(1, 0) - probe.x(0, 0) < sc.min_spacing - 1e-12) continue;
      best = std::min(best, sc.sinr_targets[0] * sc.noise_powers[0] /
                                std::norm(effective_channel(sc, probe).psi(0, 0)));
    }
  CHECK(rep.total_power <= best * 1.01);
}

TEST_CASE("parameter validation") {
  PenaltyParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = PenaltyParams{};
  p.rho0 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
