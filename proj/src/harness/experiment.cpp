// SPDX-License-Identifier: Apache-2.0
#include "pass/harness/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "pass/baseline.hpp"
#include "pass/penalty.hpp"
#include "pass/txbf.hpp"
#include "pass/zfopt.hpp"

namespace pass::harness {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double mean_of(const RVec& v) { return v.size() == 0 ? 0.0 : v.mean(); }

struct DropOutput {
  std::vector<ResultRow> rows;
  std::vector<TraceRow> trace;
};

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// SINR of a PASS design evaluated on h + dh.
double mismatched_sinr_pass(const Scenario& sc, const PinchingLayout& x, const CMat& w, double eps,
                            std::uint64_t seed, int drop) {
  CounterRng rng(seed, static_cast<std::uint64_t>(drop), kPurposeChannelError);
  const auto len = static_cast<Eigen::Index>(sc.n_waveguides() * sc.n_antennas);
  std::vector<CVec> dh;
  for (std::size_t k = 0; k < sc.n_users(); ++k) dh.push_back(random_sphere_vector(rng, len, eps));
  const CMat psi = effective_channel_perturbed(sc, x, dh);
  return mean_of(received_sinr(psi, w, sc.noise_powers));
}

double mismatched_sinr_ula(const baseline::UlaScenario& ula, const CMat& h, const CMat& w, double eps,
                           std::uint64_t seed, int drop) {
  CounterRng rng(seed, static_cast<std::uint64_t>(drop), kPurposeChannelError);
  CMat actual = h;
  for (Eigen::Index k = 0; k < h.cols(); ++k) actual.col(k) += random_sphere_vector(rng, h.rows(), eps);
  return mean_of(received_sinr(actual, w, ula.noise_powers));
}

DropOutput run_drop(const ExperimentConfig& cfg, double value, int drop) {
  DropOutput out;
  Activation activation = cfg.activation;
  const ScenarioParams params = params_at(cfg, value, &activation);
  const auto users = drop_users(params, cfg.seed, static_cast<std::uint64_t>(drop));
  const bool error_sweep = cfg.sweep == SweepKind::kSinrVsChannelError;
  const double eps = error_sweep ? value : 0.0;

  auto base_row = [&](Algorithm algo) {
    ResultRow r;
    r.sweep_value = value;
    r.drop = drop;
    r.algorithm = algo;
    r.power_model = cfg.power_model;
    r.activation = activation;
    return r;
  };
  auto fail = [](ResultRow& r, const std::exception& e) {
    r.failed = true;
    r.converged = false;
    r.total_power_w = std::numeric_limits<double>::quiet_NaN();
    r.mean_sinr = std::numeric_limits<double>::quiet_NaN();
    r.error = e.what();
  };

  Scenario sc;
  try {
    sc = build_scenario(params, cfg.power_model, activation, users);
  } catch (const std::exception& e) {
    for (Algorithm a : cfg.algorithms) {
      ResultRow r = base_row(a);
      fail(r, e);
      out.rows.push_back(r);
    }
    return out;
  }

  zfopt::ZfOptions zf_opts = cfg.zf;
  zf_opts.grid_points = cfg.grid_points;

  std::optional<zfopt::ZfSolution> zf;
  std::string zf_error;
  double zf_ms = 0.0;
  if (cfg.has(Algorithm::kZf) || cfg.has(Algorithm::kPenalty)) {
    Stopwatch sw;
    try {
      zf = zfopt::solve(sc, zf_opts);
    } catch (const std::exception& e) {
      zf_error = e.what();
    }
    zf_ms = sw.elapsed_ms();
  }

  for (Algorithm algo : cfg.algorithms) {
    ResultRow row = base_row(algo);
    try {
      switch (algo) {
        case Algorithm::kZf: {
          if (!zf) throw std::runtime_error(zf_error);
          const EffectiveChannel ch = effective_channel(sc, zf->x);
          row.total_power_w = zf->total_power;
          row.mean_sinr = error_sweep ? mismatched_sinr_pass(sc, zf->x, zf->w, eps, cfg.seed, drop)
                                      : mean_of(received_sinr(ch.psi, zf->w, sc.noise_powers));
          row.converged = zf->converged;
          row.runtime_ms = zf_ms;
          for (std::size_t i = 0; i < zf->trace.size(); ++i) {
            out.trace.push_back({value, drop, algo, 0, static_cast<int>(i), zf->trace[i], 0.0});
          }
          break;
        }
        case Algorithm::kPenalty: {
          Stopwatch sw;
          penalty::PenaltyParams pp = cfg.penalty;
          pp.grid_points = cfg.grid_points;
          if (cfg.sweep == SweepKind::kConvergenceTrace) pp.epsilon = value;
          const PinchingLayout init = zf ? zf->x : zfopt::initial_layout(sc);
          const penalty::PenaltySolver solver(sc, pp);
          const penalty::PenaltyReport rep = solver.run(init);
          row.runtime_ms = sw.elapsed_ms();
          row.total_power_w = rep.total_power;
          row.mean_sinr = error_sweep ? mismatched_sinr_pass(sc, rep.x, rep.w, eps, cfg.seed, drop)
                                      : mean_of(rep.achieved_sinrs);
          row.converged = rep.converged;
          for (const auto& t : rep.trace) {
            out.trace.push_back({value, drop, algo, t.outer, t.inner, t.power_w, t.violation});
          }
          break;
        }
        case Algorithm::kConventional: {
          Stopwatch sw;
          const baseline::UlaScenario ula =
              baseline::ula_from(sc, Position{0.0, 0.0, params.bs_height});
          const CMat h = baseline::ula_channel(ula);
          const txbf::PowerMinResult res = baseline::solve_conventional(ula);
          row.runtime_ms = sw.elapsed_ms();
          row.total_power_w = res.total_power;
          row.mean_sinr = error_sweep ? mismatched_sinr_ula(ula, h, res.w, eps, cfg.seed, drop)
                                      : mean_of(res.achieved_sinrs);
          row.converged = res.converged;
          break;
        }
      }
    } catch (const std::exception& e) {
      fail(row, e);
    }
    out.rows.push_back(row);
  }
  return out;
}

ResultRow summarize(const std::vector<const ResultRow*>& rows) {
  ResultRow s = *rows.front();
  s.drop = -1;
  s.failed = false;
  s.error.clear();
  double power = 0.0, sinr = 0.0, ms = 0.0;
  int ok = 0;
  bool converged = true;
  for (const ResultRow* r : rows) {
    ms += r->runtime_ms;
    if (r->failed) {
      converged = false;
      continue;
    }
    ++ok;
    power += r->total_power_w;
    sinr += r->mean_sinr;
    converged = converged && r->converged;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.total_power_w = ok > 0 ? power / ok : nan;
  s.mean_sinr = ok > 0 ? sinr / ok : nan;
  s.converged = ok > 0 && converged;
  s.failed = ok == 0;
  s.runtime_ms = ms / static_cast<double>(rows.size());
  return s;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t drop, std::uint64_t purpose)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ drop) ^ purpose)) {}

std::uint64_t CounterRng::next() {
  return splitmix64(key_ ^ splitmix64(counter_++));
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

CVec random_sphere_vector(CounterRng& rng, Eigen::Index len, double radius) {
  CVec v(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const double re = rng.normal();
    v(i) = cplx(re, rng.normal());
  }
  const double norm = v.norm();
  if (radius == 0.0 || norm == 0.0) return CVec::Zero(len);
  return v * (radius / norm);
}

ServiceArea service_area(const ScenarioParams& p) {
  const double hw = p.half_width();
  return {p.d0, p.d0 + p.dx, -hw, hw};
}

std::vector<Position> drop_users(const ScenarioParams& p, std::uint64_t seed, std::uint64_t drop) {
  CounterRng rng(seed, drop, kPurposeUsers);
  const ServiceArea a = service_area(p);
  std::vector<Position> users(p.n_users);
  for (auto& u : users) {
    u.x = a.x_lo + (a.x_hi - a.x_lo) * rng.uniform();
    u.y = a.y_lo + (a.y_hi - a.y_lo) * rng.uniform();
    u.z = 0.0;
  }
  return users;
}

Scenario build_scenario(const ScenarioParams& p, coupledmode::PowerModel model, Activation activation,
                        const std::vector<Position>& users) {
  p.validate();
  const std::size_t n = p.n_waveguides;
  const std::size_t m = p.antennas_per_waveguide;
  Scenario sc;
  for (std::size_t i = 0; i < n; ++i) {
    sc.waveguide_y.push_back((static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) *
                             p.waveguide_spacing);
    sc.waveguide_z.push_back(p.waveguide_height);
  }
  sc.waveguide_x0 = p.d0 - p.margin();
  sc.n_antennas = m;
  sc.users = users;
  sc.lambda = kSpeedOfLight / (p.frequency_ghz * 1e9);
  sc.n_g = p.n_g;
  sc.derive_rf_constants();
  sc.noise_powers.assign(users.size(), dbm_to_watts(p.noise_dbm));
  sc.sinr_targets.assign(users.size(), db_to_linear(p.sinr_db));
  sc.ladder = model == coupledmode::PowerModel::kEqual
                  ? coupledmode::make_equal_ladder(m, p.total_radiated / static_cast<double>(m))
                  : coupledmode::make_proportional_ladder(m, p.total_radiated);
  if (activation == Activation::kDiscrete) {
    const auto q = static_cast<std::size_t>(std::llround(p.positions_per_meter * p.x_max)) + 1;
    sc.feasible = FeasibleSet::discrete(p.x_max, q);
  } else {
    sc.feasible = FeasibleSet::continuous(p.x_max);
  }
  sc.min_spacing = p.min_spacing;
  sc.validate();
  return sc;
}

ScenarioParams params_at(const ExperimentConfig& cfg, double value, Activation* activation) {
  ScenarioParams p = cfg.scenario;
  switch (cfg.sweep) {
    case SweepKind::kPowerVsSinr:
      p.sinr_db = value;
      break;
    case SweepKind::kPowerVsDistance:
      p.d0 = value;
      break;
    case SweepKind::kPowerVsAntennas:
      p.antennas_per_waveguide =
          static_cast<std::size_t>(std::llround(value / static_cast<double>(p.n_waveguides)));
      break;
    case SweepKind::kPowerVsDiscrete:
      p.positions_per_meter = value;
      if (activation != nullptr) *activation = Activation::kDiscrete;
      break;
    case SweepKind::kConvergenceTrace:
    case SweepKind::kSinrVsChannelError:
      break;
  }
  return p;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult result;
  for (double value : cfg.values) {
    std::vector<DropOutput> drops(static_cast<std::size_t>(cfg.n_drops));
#pragma omp parallel for schedule(dynamic, 1)
    for (int d = 0; d < cfg.n_drops; ++d) {
      drops[static_cast<std::size_t>(d)] = run_drop(cfg, value, d);
    }
    for (const auto& d : drops) {
      for (const auto& r : d.rows) {
        result.rows.push_back(r);
        if (r.failed) ++result.failures;
      }
      result.trace.insert(result.trace.end(), d.trace.begin(), d.trace.end());
    }
    for (Algorithm algo : cfg.algorithms) {
      std::vector<const ResultRow*> mine;
      for (const auto& d : drops) {
        for (const auto& r : d.rows) {
          if (r.algorithm == algo) mine.push_back(&r);
        }
      }
      if (!mine.empty()) result.rows.push_back(summarize(mine));
    }
  }
  return result;
}

double summary_power_w(const SweepResult& r, double value, Algorithm algo) {
  for (const auto& row : r.rows) {
    if (row.drop == -1 && row.algorithm == algo && row.sweep_value == value) return row.total_power_w;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace pass::harness
