// SPDX-License-Identifier: Apache-2.0
#include "pass/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace pass::harness {

namespace {

std::string fmt(const char* spec, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool timing) {
  os << kResultHeader << '\n';
  for (const auto& r : rows) {
    const double dbm = r.failed ? std::nan("") : watts_to_dbm(r.total_power_w);
    const double sinr_db = r.failed ? std::nan("") : linear_to_db(r.mean_sinr);
    os << fmt("%.10g", r.sweep_value) << ',' << (r.drop < 0 ? std::string("mean") : std::to_string(r.drop))
       << ',' << to_string(r.algorithm) << ',' << to_string(r.power_model) << ','
       << to_string(r.activation) << ',' << fmt("%.6f", dbm) << ',' << fmt("%.6f", sinr_db) << ','
       << (r.converged ? 1 : 0) << ',' << (timing ? fmt("%.3f", r.runtime_ms) : std::string("0"))
       << '\n';
  }
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << kTraceHeader << '\n';
  for (const auto& t : rows) {
    os << fmt("%.10g", t.sweep_value) << ',' << t.drop << ',' << to_string(t.algorithm) << ','
       << t.outer << ',' << t.inner << ',' << fmt("%.9e", t.power_w) << ','
       << fmt("%.9e", t.violation) << '\n';
  }
}

}  // namespace pass::harness
