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

#include <string>
#include <vector>

namespace rydgate {

struct OracleOutcome {
    std::string name;
    bool passed = false;
    double residual = 0;
    double threshold = 0;
    std::string detail;
};

// Self-consistency oracles: closed forms, quadrature against the analytic Gaussian,
// norm bookkeeping, calibration, and perturbative Doppler phases against exact references.
std::vector<OracleOutcome> run_oracles(const GateConfig& config, int jobs = 0);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace rydgate
