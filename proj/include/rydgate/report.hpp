// Copyright 2026 The rydgate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "rydgate/config.hpp"
#include "rydgate/gate.hpp"
#include "rydgate/optimizer.hpp"
#include "rydgate/pulse.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rydgate {

using Json = nlohmann::ordered_json;

Json to_json(const GateResult& result);
Json to_json(const ErrorBudget& budget);
Json to_json(const PulseSchedule& schedule);

// Column order: ramp_time_us, err_nomotion, err_single, err_dopplerfree, err_no_dipole_force, gate_time_us.
// Lines starting with '#' carry the manifest reference and skipped rows.
std::string scan_csv(const ScanResult& scan, const std::string& manifest_name = "");
// iteration, objective, best_objective, error, gate_time_us, then one column per parameter.
std::string optimizer_log_csv(const std::vector<EvaluationRecord>& log, const std::string& manifest_name = "");

struct RunManifest {
    std::string config_hash;
    std::string version;
    std::string command;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;

    Json to_json() const;
};

// FNV-1a 64-bit hash of the canonical serialisation, as 16 hex digits.
std::string config_hash(const GateConfig& config);
std::string utc_timestamp();
std::string tool_version();

} // namespace rydgate
