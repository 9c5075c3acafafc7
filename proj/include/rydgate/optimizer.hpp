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
#include "rydgate/pulse.hpp"

#include <cstdint>
#include <vector>

namespace rydgate {

struct OptimizationProblem {
    OptimizationSettings settings;
    PulseSchedule seed; // shape is converted to PiecewiseNodes at node_count evenly spaced fractions
    std::uint64_t rng_seed = 0;
    int jobs = 0;

    // Settings from the config, seed from its schedule, rng_seed from RYDGATE_SEED when set.
    static OptimizationProblem from_config(const GateConfig& config);
};

struct EvaluationRecord {
    int iteration = 0;
    double objective = 0;      // +inf for candidates that could not be calibrated
    double best_objective = 0; // running minimum
    double error = 0;          // 1-F at search resolution
    double gate_time = 0;
    std::vector<double> parameters; // node Ω/2π, Δ/2π in MHz (then ramp_time for MinTime)
};

struct OptimizationResult {
    PulseSchedule schedule;
    GateResult result; // re-evaluated at the config's full quadrature resolution
    double objective = 0;
    double seed_objective = 0;
    std::vector<EvaluationRecord> log;
};

// Nelder-Mead over node values. Every candidate is calibrated to a π conditional phase.
// Throws infeasible-problem if no candidate (including the seed) calibrates.
OptimizationResult optimize(const OptimizationProblem& problem, const GateConfig& config);

// Ramp and hold with the given node values and total duration T and a π conditional phase.
// Throws phase-unreachable when no ramp time fits.
PulseSchedule calibrate_total_time(const GateConfig& config, const PulseSchedule& shape, double total_time);

} // namespace rydgate
