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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rydgate {

// User-facing frequencies are cyclic (value/2π) in MHz, lengths in μm, times in μs.
// Internally ħ = 1 and every energy or rate is an angular frequency in rad/μs;
// momenta are measured in units of ħk_L.

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kHbar = 1.054571817e-34; // J·s
inline constexpr double kCesiumMass = 2.20694650e-25; // kg

enum class Configuration { SingleLaser, DopplerFree };

std::string_view configuration_name(Configuration c); // "single-laser" / "doppler-free"
Configuration parse_configuration(std::string_view name);

enum class RampShape { SmoothstepSin2, Linear, PiecewiseNodes };

std::string_view ramp_shape_name(RampShape s);

// Ramp-up control point; the ramp-down mirrors the ramp-up.
struct ControlPoint {
    double time = 0;     // μs from the start of the ramp
    double rabi = 0;     // Ω/2π, MHz
    double detuning = 0; // Δ/2π, MHz
    bool operator==(const ControlPoint&) const = default;
};

enum class Objective { MinError, MinTime };

struct OptimizationSettings {
    Objective objective = Objective::MinError;
    double total_time = 2.3;      // μs, MinError target duration
    double error_ceiling = 5e-3;  // MinTime feasibility bound on 1-F
    int node_count = 4;           // interior control points on the ramp
    int budget = 60;              // candidate evaluations
    double rabi_min = 0;          // MHz
    double rabi_max = 3;          // MHz
    double detuning_min = 0;      // MHz
    double detuning_max = 6;      // MHz
    int search_nodes = 9;         // quadrature nodes per axis during the search
    bool operator==(const OptimizationSettings&) const = default;
};

struct GateConfig {
    // [physics]
    Configuration configuration = Configuration::DopplerFree;
    double rabi_max = 0;          // Ω_max/2π, MHz
    double detuning_start = 0;    // MHz
    double detuning_end = 0;      // MHz
    double gamma = 0;             // Γ/2π, MHz
    double separation = 0;        // z̄, μm
    double c6 = 1.0e5;            // C6/2π, MHz·μm^n
    int vdd_exponent = 6;
    std::optional<double> vdd_pm; // V_dd^{+-}(z̄)/2π override, MHz
    std::optional<double> vdd_mm; // V_dd^{--}(z̄)/2π override, MHz
    double nbar = 0;
    double trap_freq = 0.150;     // ω_osc/2π, MHz
    double wavelength = 319.0;    // nm
    double atom_mass = kCesiumMass;

    // [pulse]
    double ramp_time = 0;               // μs
    std::optional<double> hold_time;    // μs; empty means "auto" (calibrated)
    double max_hold_time = 10.0;        // μs, search limit for calibration
    RampShape shape = RampShape::SmoothstepSin2;
    std::vector<ControlPoint> nodes;    // PiecewiseNodes only

    // [numerics]
    int quadrature_nodes = 21;
    double integrator_tol = 1e-10;
    int checkpoints = 2000;

    // [optimization]
    OptimizationSettings optimization;

    bool operator==(const GateConfig&) const = default;
};

// Quantities derived from a GateConfig, in internal units.
struct DerivedParams {
    double k_l = 0;                  // rad/μm
    double omega_rec = 0;            // ħk²/2m, rad/μs
    double doppler_per_hbar_k = 0;   // k·ħk/m = 2·omega_rec, rad/μs per ħk
    double delta_p_th = 0;           // thermal momentum spread, ħk units
    double eta = 0;                  // Lamb-Dicke parameter
    double vdd_at_zbar = 0;          // rad/μs
    double vdd_gradient_at_zbar = 0; // rad/μs/μm
    double reduced_mass = 0;         // kg

    // Angular versions of the cyclic config inputs.
    double rabi_max = 0;
    double detuning_start = 0;
    double detuning_end = 0;
    double gamma = 0;
    double omega_osc = 0;

    // Pair potentials and gradients for r+r+, r+r-/r-r+, r-r- (all equal unless overridden).
    double vdd_pp = 0, vdd_pm = 0, vdd_mm = 0;
    double grad_pp = 0, grad_pm = 0, grad_mm = 0;
};

GateConfig load_config(std::string_view text);
GateConfig load_config_file(const std::string& path);
std::string serialize_config(const GateConfig& config);

// Throws invalid-parameter on the first violated bound.
void validate(const GateConfig& config);

DerivedParams derive(const GateConfig& config);

} // namespace rydgate
