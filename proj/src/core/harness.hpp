/*
 * Copyright 2026 The defalg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace defalg {

/// Commands: spectrum-oscillator, spectrum-position, minimal-length,
/// verify-algebra, closure-fit, expansion-check, contraction-study.
const std::vector<std::string>& command_names();

/// Parameter keys a command accepts.
const std::vector<std::string>& command_keys(const std::string& command);

/// Expands `params` (an object, or an array of objects) into typed sweep
/// points. A comma-separated string or a JSON array under a scalar key is a
/// sweep axis; axes combine as a cartesian product in key order. Unknown or
/// foreign keys raise ErrorCode::InvalidParameter.
std::vector<nlohmann::json> expand_sweep(const std::string& command, const nlohmann::json& params);

struct RunOutcome {
    nlohmann::json report;
    bool passed = false;
};

/// Runs every sweep point (concurrently; results keep input order) and
/// assembles the report: command, params echo, version, tolerances,
/// per-point results with named checks, and the overall verdict.
/// `tolerance` replaces the command's primary tolerance. Usage and parameter
/// errors throw; numerical-consistency failures are recorded as failed
/// points.
RunOutcome run_command(const std::string& command, const nlohmann::json& params,
                       std::optional<double> tolerance = std::nullopt);

const char* library_version() noexcept;

} // namespace defalg
