// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "pass/search.hpp"

using namespace pass;
using namespace pass::search;

namespace {

auto batch_of = [](auto f) {
  return [f](std::span<const double> xs, std::span<double> out) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  };
};

}  // namespace

TEST_CASE("neighbour interval") {
  RMat x(3, 1);
  x << 1.0, 5.0, 9.0;
  auto iv = neighbor_interval(x, 0, 0, 0.1, 10.0);
  CHECK(iv.lo == 0.0);
  CHECK(iv.hi == doctest::Approx(4.9));
  iv = neighbor_interval(x, 1, 0, 0.1, 10.0);
  CHECK(iv.lo == doctest::Approx(1.1));
  CHECK(iv.hi == doctest::Approx(8.9));
  iv = neighbor_interval(x, 2, 0, 0.1, 10.0);
  CHECK(iv.hi == 10.0);
}

TEST_CASE("candidates stay inside the interval and on the grid") {
  const auto fs = FeasibleSet::discrete(10.0, 101);
  std::vector<double> out;
  fill_candidates(fs, grid_size(fs, 0), Interval{1.05, 2.0}, out);
  REQUIRE(out.size() == 10);
  CHECK(out.front() == doctest::Approx(1.1));
  CHECK(out.back() == doctest::Approx(2.0));
  fill_candidates(fs, 101, Interval{1.01, 1.09}, out);
  CHECK(out.empty());
  fill_candidates(fs, 101, Interval{3.0, 2.0}, out);
  CHECK(out.empty());
}

TEST_CASE("grid search plus refinement finds an off-grid minimum") {
  const auto fs = FeasibleSet::continuous(10.0);
  auto f = [](double x) { return (x - 3.14159) * (x - 3.14159) + std::cos(8.0 * x) * 0.01; };
  Workspace ws;
  const auto coarse = minimize_coordinate(batch_of(f), f, fs, 1001, Interval{0.0, 10.0}, 9.0, false, ws);
  const auto fine = minimize_coordinate(batch_of(f), f, fs, 1001, Interval{0.0, 10.0}, 9.0, true, ws);
  CHECK(coarse.moved);
  CHECK(fine.value <= coarse.value);
  // the refined point is a stationary point of f
  const double h = 1e-6;
  CHECK(std::abs((f(fine.x + h) - f(fine.x - h)) / (2 * h)) < 1e-4);
}

TEST_CASE("incumbent kept unless strictly improved") {
  const auto fs = FeasibleSet::continuous(10.0);
  auto flat = [](double) { return 1.0; };
  Workspace ws;
  const auto out = minimize_coordinate(batch_of(flat), flat, fs, 101, Interval{0.0, 10.0}, 4.321, true, ws);
  CHECK_FALSE(out.moved);
  CHECK(out.x == 4.321);
}

TEST_CASE("ties resolve to the smaller position") {
  const auto fs = FeasibleSet::discrete(4.0, 5);
  auto f = [](double x) { return std::abs(x - 2.0) < 1.5 ? 0.0 : 1.0; };
  Workspace ws;
  const auto out = minimize_coordinate(batch_of(f), f, fs, 5, Interval{0.0, 4.0}, 4.0, true, ws);
  CHECK(out.x == 1.0);
}

TEST_CASE("empty interval keeps the incumbent") {
  const auto fs = FeasibleSet::discrete(10.0, 11);
  auto f = [](double x) { return x; };
  Workspace ws;
  const auto out = minimize_coordinate(batch_of(f), f, fs, 11, Interval{3.2, 3.8}, 3.5, false, ws);
  CHECK(out.empty);
  CHECK_FALSE(out.moved);
  CHECK(out.x == 3.5);
}
