// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

namespace pass::harness::detail {

/// Scenario name -> config text, generated from configs/*.cfg at configure time.
const std::map<std::string, std::string>& builtin_configs();

}  // namespace pass::harness::detail
