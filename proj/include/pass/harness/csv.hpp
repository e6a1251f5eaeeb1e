// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pass/harness/experiment.hpp"

namespace pass::harness {

inline constexpr const char* kResultHeader =
    "sweep_value,drop,algorithm,power_model,activation,total_power_dbm,mean_sinr_db,converged,"
    "runtime_ms";
inline constexpr const char* kTraceHeader =
    "sweep_value,drop,algorithm,outer,inner,power_w,violation";

/// Failed rows carry total_power_dbm = nan and converged = 0. Summary rows
/// use drop = "mean". With `timing` off runtime_ms is written as 0 so that
/// repeated runs are byte-identical.
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool timing = true);
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);

}  // namespace pass::harness
