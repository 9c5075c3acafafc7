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

#include <complex>
#include <memory>
#include <vector>

namespace rydgate {

struct PulseSample {
    double rabi = 0;     // rad/μs
    double detuning = 0; // rad/μs
};

// Ramp-up over [0, peak_time], constant hold, then the mirrored ramp-down.
// peak_time equals ramp_time unless calibration truncated the ramp before full power.
struct PulseSchedule {
    double ramp_time = 1;      // t_r, μs
    double peak_time = 1;      // μs, <= ramp_time
    double hold_time = 0;      // t_h, μs
    double rabi_max = 0;       // rad/μs
    double detuning_start = 0; // rad/μs
    double detuning_end = 0;   // rad/μs
    RampShape shape = RampShape::SmoothstepSin2;
    // Interior ramp-up points for PiecewiseNodes: time as a fraction of ramp_time,
    // rabi and detuning in rad/μs. The end points (0, 0, Δ_start) and (1, Ω_max, Δ_end) are implicit.
    std::vector<ControlPoint> nodes;

    double total_time() const { return 2.0 * peak_time + hold_time; }
    // Times in (0, T) where the schedule is not smooth.
    std::vector<double> breakpoints() const;

    // Ramp-up profile and its time derivative at τ ∈ [0, ramp_time].
    PulseSample ramp(double tau) const;
    PulseSample ramp_rate(double tau) const;

    // Rebuilds the interpolant after nodes change.
    void prepare();

    // Uses hold_time from the config (0 when "auto").
    static PulseSchedule from_config(const GateConfig& config);

private:
    struct Interpolant;
    std::shared_ptr<const Interpolant> interp_;
};

// Throws out-of-schedule for t outside [0, T].
PulseSample evaluate(const PulseSchedule& schedule, double t);
// dΩ/dt and dΔ/dt (one-sided at breakpoints).
PulseSample rates(const PulseSchedule& schedule, double t);

// max_t max_e |<e|dH0/dt|g>| / (E_e - E_g)^2 on the frozen {00, B, rr} block.
// Throws gap-closure with the time of closure.
double adiabaticity_margin(const PulseSchedule& schedule, const GateConfig& config, int samples = 2000);

// Zero-momentum, Γ = 0 amplitudes of |00> and |01> (single atom), from full propagation.
struct PhaseRecord {
    std::complex<double> a00;
    std::complex<double> a01;
    double conditional_phase = 0; // arg(a00 a11 / (a01 a10)) with a11 = 1, wrapped to (-π, π]
    double ground_return = 0;     // |a00|^2
};
PhaseRecord measure_phases(const GateConfig& config, const PulseSchedule& schedule);

// Chooses hold_time (or, when the ramps alone overshoot, a truncated peak_time with no hold)
// so the zero-momentum conditional phase equals target_phase (mod 2π) within 1e-4 rad.
// Throws phase-unreachable with the largest phase reached within max_hold_time.
PulseSchedule calibrate_hold(const GateConfig& config, double target_phase);
PulseSchedule calibrate_hold(const GateConfig& config, const PulseSchedule& seed, double target_phase);

} // namespace rydgate
