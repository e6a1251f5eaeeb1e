// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <omp.h>

#include <random>
#include <vector>

#include "pass/kernels.hpp"

using namespace pass;
using namespace pass::kernels;

namespace {

struct Fixture {
  std::vector<double> user_x{3.0, 17.5, 31.0, 44.2};
  std::vector<double> omega{9.0 + 36.0, 9.0 + 4.0, 9.0 + 1.0, 9.0 + 100.0};
  std::vector<cplx> target;
  std::vector<cplx> a_base;
  CMat minv, t;
  std::vector<double> xs;
  SlotGeometry geo;

  explicit Fixture(std::size_t points) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n01;
    for (int k = 0; k < 4; ++k) {
      target.emplace_back(1e-4 * n01(rng), 1e-4 * n01(rng));
      a_base.emplace_back(1e-4 * n01(rng), 1e-4 * n01(rng));
    }
    CMat b = CMat::Random(4, 4) * 1e-4;
    minv = (b * b.adjoint() + 1e-9 * CMat::Identity(4, 4)).inverse();
    t = minv * RVec::LinSpaced(4, 1e-9, 4e-9).asDiagonal() * minv;
    for (std::size_t i = 0; i < points; ++i) xs.push_back(50.0 * static_cast<double>(i) / static_cast<double>(points - 1));
    const double lambda = 0.02;
    geo = {user_x, omega, lambda / (4.0 * kPi) * 0.387, 2.0 * kPi / lambda, 1.4 * 2.0 * kPi / lambda};
  }
};

}  // namespace

TEST_CASE("slot entry matches the free-space expression") {
  Fixture f(2);
  const double x = 12.0;
  const double r = std::sqrt((x - f.user_x[1]) * (x - f.user_x[1]) + f.omega[1]);
  const cplx expected = f.geo.gain / r * std::exp(cplx(0.0, f.geo.beta0 * r + f.geo.beta_g * x));
  CHECK(std::abs(slot_entry(f.geo, 1, x) - expected) < 1e-18);
}

TEST_CASE("penalty residual: OpenMP kernel equals serial reference bit for bit") {
  Fixture f(20001);
  std::vector<double> a(f.xs.size()), b(f.xs.size());
  serial::penalty_residual(f.geo, f.target, f.xs, a);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    omp::penalty_residual(f.geo, f.target, f.xs, b);
    CHECK(a == b);
  }
  for (std::size_t i = 0; i < f.xs.size(); i += 997) CHECK(a[i] == residual_at(f.geo, f.target, f.xs[i]));
}

TEST_CASE("ZF score: OpenMP kernel equals serial reference bit for bit") {
  Fixture f(20001);
  const ZfScoreInputs in{f.a_base, &f.minv, &f.t};
  std::vector<double> a(f.xs.size()), b(f.xs.size());
  serial::zf_score(f.geo, in, f.xs, a);
  for (int threads : {1, 3}) {
    omp_set_num_threads(threads);
    omp::zf_score(f.geo, in, f.xs, b);
    CHECK(a == b);
  }
  zf_score(Exec::kSerial, f.geo, in, f.xs, b);
  CHECK(a == b);
}

TEST_CASE("ZF score matches the dense Sherman-Morrison expression") {
  Fixture f(11);
  const ZfScoreInputs in{f.a_base, &f.minv, &f.t};
  for (double x : f.xs) {
    CVec a(4);
    for (std::size_t k = 0; k < 4; ++k) a(static_cast<Eigen::Index>(k)) = f.a_base[k] + std::conj(slot_entry(f.geo, k, x));
    const cplx num = a.dot(f.t * a);
    const cplx den = 1.0 + a.dot(f.minv * a);
    CHECK(zf_score_at(f.geo, in, x) == doctest::Approx(num.real() / den.real()).epsilon(1e-12));
  }
}

TEST_CASE("kernels handle an empty batch") {
  Fixture f(2);
  std::vector<double> none, out;
  CHECK_NOTHROW(omp::penalty_residual(f.geo, f.target, none, out));
  CHECK_NOTHROW(serial::penalty_residual(f.geo, f.target, none, out));
}
