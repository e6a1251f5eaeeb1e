// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "pass/channel.hpp"
#include "test_support.hpp"

using namespace pass;

namespace {

Scenario single_antenna_scenario() {
  Scenario sc;
  sc.waveguide_y = {0.0};
  sc.waveguide_z = {3.0};
  sc.n_antennas = 1;
  sc.users = {Position{0.0, 0.0, 0.0}};
  sc.lambda = 0.02;
  sc.n_g = 1.4;
  sc.derive_rf_constants();
  sc.noise_powers = {1e-11};
  sc.sinr_targets = {100.0};
  sc.ladder = coupledmode::make_equal_ladder(1, 0.9);
  sc.feasible = FeasibleSet::continuous(10.0);
  return sc;
}

}  // namespace

TEST_CASE("single antenna directly above the user") {
  const Scenario sc = single_antenna_scenario();
  const PinchingLayout layout{RMat::Zero(1, 1)};
  const CMat psi = effective_channel(sc, layout).psi;
  const cplx expected = sc.eta * std::sqrt(0.9) / 3.0 * std::exp(cplx(0.0, 3.0 * sc.beta0));
  CHECK(std::abs(psi(0, 0) - expected) < 1e-15);
}

TEST_CASE("in-waveguide phase follows the antenna position") {
  Scenario sc = single_antenna_scenario();
  sc.users = {Position{2.0, 0.0, 0.0}};
  const PinchingLayout layout{RMat::Constant(1, 1, 2.0)};
  const cplx got = effective_channel(sc, layout).psi(0, 0);
  const cplx expected =
      sc.eta * std::sqrt(0.9) / 3.0 * std::exp(cplx(0.0, 3.0 * sc.beta0 + 2.0 * sc.beta_g));
  CHECK(std::abs(got - expected) < 1e-15);
}

TEST_CASE("waveguide origin shifts antennas in global coordinates") {
  Scenario sc = single_antenna_scenario();
  sc.waveguide_x0 = 5.0;
  sc.users = {Position{5.0, 4.0, 0.0}};
  CHECK(distance(sc, sc.users[0], 0, 0.0) == doctest::Approx(5.0));
}

TEST_CASE("sum of per-antenna parts equals the stacked channel") {
  std::mt19937_64 rng(5);
  for (std::uint64_t drop = 0; drop < 20; ++drop) {
    const Scenario sc = testing::default_scenario(drop);
    const PinchingLayout layout = testing::random_layout(sc, rng);
    const EffectiveChannel ch = effective_channel(sc, layout);
    CMat sum = CMat::Zero(ch.psi.rows(), ch.psi.cols());
    for (const auto& p : ch.phis) sum += p;
    const CMat stacked = effective_channel_stacked(sc, layout);
    CHECK((sum - ch.psi).norm() <= 1e-10 * ch.psi.norm());
    CHECK((stacked - ch.psi).norm() <= 1e-10 * ch.psi.norm());
  }
}

TEST_CASE("zero perturbation reproduces the nominal channel") {
  std::mt19937_64 rng(9);
  const Scenario sc = testing::default_scenario(4);
  const PinchingLayout layout = testing::random_layout(sc, rng);
  const auto len = static_cast<Eigen::Index>(sc.n_waveguides() * sc.n_antennas);
  const std::vector<CVec> dh(sc.n_users(), CVec::Zero(len));
  const CMat psi = effective_channel(sc, layout).psi;
  CHECK((effective_channel_perturbed(sc, layout, dh) - psi).norm() <= 1e-12 * psi.norm());
}

TEST_CASE("perturbation enters linearly through the in-waveguide vector") {
  std::mt19937_64 rng(10);
  const Scenario sc = testing::default_scenario(2);
  const PinchingLayout layout = testing::random_layout(sc, rng);
  const auto m = static_cast<Eigen::Index>(sc.n_antennas);
  const auto len = static_cast<Eigen::Index>(sc.n_waveguides()) * m;
  std::vector<CVec> dh(sc.n_users(), CVec::Zero(len));
  dh[1](m + 2) = cplx(1e-5, -2e-5);  // waveguide 1, antenna 2
  const CMat psi = effective_channel(sc, layout).psi;
  const CMat pert = effective_channel_perturbed(sc, layout, dh);
  const CVec g = inwaveguide_vector(layout.x.col(1), sc.ladder, sc.beta_g);
  const cplx delta = std::conj(g(2)) * dh[1](m + 2);
  CHECK(std::abs(pert(1, 1) - psi(1, 1) - delta) < 1e-10 * std::abs(psi(1, 1)));
  CHECK(std::abs(pert(0, 0) - psi(0, 0)) < 1e-10 * std::abs(psi(0, 0)));
}

TEST_CASE("user on an antenna is degenerate") {
  Scenario sc = single_antenna_scenario();
  sc.users = {Position{1.0, 0.0, 3.0}};
  const PinchingLayout layout{RMat::Constant(1, 1, 1.0)};
  CHECK_THROWS_AS(effective_channel(sc, layout), DegenerateGeometry);
  CHECK_THROWS_AS(effective_channel_stacked(sc, layout), DegenerateGeometry);
}

TEST_CASE("layout feasibility") {
  Scenario sc = testing::default_scenario(0);
  PinchingLayout layout = zfopt::initial_layout(sc);
  CHECK(is_feasible(sc, layout));

  PinchingLayout close = layout;
  close.x(1, 0) = close.x(0, 0) + 0.05;
  std::string why;
  CHECK_FALSE(is_feasible(sc, close, &why));
  CHECK_FALSE(why.empty());

  PinchingLayout outside = layout;
  outside.x(5, 2) = 50.5;
  CHECK_FALSE(is_feasible(sc, outside));
  CHECK_THROWS_AS(validate_layout(sc, outside), std::invalid_argument);

  sc.feasible = FeasibleSet::discrete(50.0, 501);
  PinchingLayout off = zfopt::initial_layout(sc);
  CHECK(is_feasible(sc, off));
  off.x(0, 0) += 0.03;
  CHECK_FALSE(is_feasible(sc, off));
}

TEST_CASE("received SINR on a hand-worked example") {
  CMat psi(2, 2);
  psi << cplx(1, 0), cplx(0, 1), cplx(0, 0), cplx(1, 0);
  CMat w(2, 2);
  w << cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0);
  // user 0: u0 = [1, 0]: signal |2|^2 = 4, interference |0|^2 -> 4 / 0.5
  // user 1: u1 = [j, 1]: signal |u1^H w1|^2 = 1, interference |u1^H w0|^2 = |(-j) 2|^2 = 4
  const RVec sinr = received_sinr(psi, w, std::vector<double>{0.5, 1.0});
  CHECK(sinr(0) == doctest::Approx(8.0));
  CHECK(sinr(1) == doctest::Approx(1.0 / 5.0));
}

TEST_CASE("feasible set grid") {
  const auto fs = FeasibleSet::discrete(50.0, 501);
  CHECK(fs.grid_value(0, 501) == 0.0);
  CHECK(fs.grid_value(500, 501) == 50.0);
  CHECK(fs.contains(12.3));
  CHECK_FALSE(fs.contains(12.34));
  CHECK_THROWS_AS(FeasibleSet::discrete(50.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::continuous(0.0), std::invalid_argument);
}
