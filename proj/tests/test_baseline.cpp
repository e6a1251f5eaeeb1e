// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "pass/baseline.hpp"
#include "test_support.hpp"

using namespace pass;
using namespace pass::baseline;

TEST_CASE("ULA geometry: half-wavelength spacing along x") {
  const Scenario sc = testing::default_scenario(0);
  const UlaScenario ula = ula_from(sc);
  CHECK(ula.n_antennas == sc.n_waveguides());
  CHECK(ula.spacing() == doctest::Approx(0.5 * sc.lambda));
  for (std::size_t n = 0; n < ula.n_antennas; ++n) {
    const Position a = ula.antenna(n);
    CHECK(a.x == doctest::Approx(static_cast<double>(n) * 0.5 * sc.lambda));
    CHECK(a.y == 0.0);
    CHECK(a.z == 3.0);
  }
}

TEST_CASE("ULA channel entries follow the free-space model") {
  const Scenario sc = testing::default_scenario(1);
  const UlaScenario ula = ula_from(sc);
  const CMat h = ula_channel(ula);
  REQUIRE(h.rows() == 5);
  REQUIRE(h.cols() == 4);
  for (Eigen::Index n = 0; n < 5; ++n)
    for (Eigen::Index k = 0; k < 4; ++k) {
      const Position a = ula.antenna(static_cast<std::size_t>(n));
      const Position& u = ula.users[static_cast<std::size_t>(k)];
      const double r = std::sqrt((a.x - u.x) * (a.x - u.x) + (a.y - u.y) * (a.y - u.y) + (a.z - u.z) * (a.z - u.z));
      const cplx expected = ula.eta / r * std::exp(cplx(0.0, ula.beta0 * r));
      CHECK(std::abs(h(n, k) - expected) < 1e-10 * std::abs(expected));
    }
}

TEST_CASE("conventional design meets every target when solvable") {
  // users spread in angle so the small array can separate them
  UlaScenario ula = ula_from(testing::default_scenario(0));
  ula.users = {{10.0, -8.0, 0.0}, {6.0, 9.0, 0.0}, {-7.0, 3.0, 0.0}, {1.0, -12.0, 0.0}};
  const auto res = solve_conventional(ula);
  const RVec sinr = received_sinr(ula_channel(ula), res.w, ula.noise_powers);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(sinr(k) == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(res.converged);
}

TEST_CASE("user on an array element is degenerate") {
  UlaScenario ula = ula_from(testing::default_scenario(0));
  ula.users[0] = ula.antenna(2);
  CHECK_THROWS_AS(ula_channel(ula), DegenerateGeometry);
}
