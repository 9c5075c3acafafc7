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
#include "rydgate/propagator.hpp"
#include "rydgate/pulse.hpp"

#include <Eigen/Dense>

namespace rydgate {

// Light shifts with sign(0) taken as +1.
double light_shift_single(double rabi, double detuning);
double light_shift_pair_blockaded(double rabi, double detuning);
// E^(2) from the exact {00, B, rr} block minus 2 E^(1).
double interaction_J(double rabi, double detuning, double vdd);

// Eigenstructure of the frozen-atom {00, B, rr} block.
struct DressedSpectrum {
    Eigen::Vector3d energies;  // ascending
    Eigen::Matrix3d vectors;   // columns match energies
    int ground = 0;            // column adiabatically connected to |00> at Ω = 0
    double ground_energy = 0;
    double c0 = 0, c_b = 0, c_rr = 0;
    double gap = 0;            // distance to the nearest other eigenvalue
};
// Throws gap-closure if the gap falls below 1e-9.
DressedSpectrum dressed_spectrum(double rabi, double detuning, double vdd);

// ∫ (first- plus second-order) Doppler shift of the dressed ground energy over the schedule, radians.
double doppler_phase(const PulseSchedule& schedule, const GateConfig& config, double p_cm, double p_rel);
// First- and second-order parts separately.
struct DopplerPhase {
    double first = 0;
    double second = 0;
};
DopplerPhase doppler_phase_terms(const PulseSchedule& schedule, const GateConfig& config, double p_cm, double p_rel);

// ∫ [E_g(H0 + V_Dop) - E_g(H0)] dt with both ground energies from exact diagonalisation of the
// full pair block: the quantity the perturbative doppler_phase expands.
double adiabatic_doppler_phase(const PulseSchedule& schedule, const GateConfig& config, double p_cm, double p_rel);

// Relative momentum kick in ħk units from the gradient-weighted trajectory integral.
double dipole_kick(const Trajectory& trajectory, const GateConfig& config);

} // namespace rydgate
