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
#include "rydgate/model.hpp"
#include "rydgate/propagator.hpp"
#include "rydgate/pulse.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace rydgate {

// Gauss-Hermite rule for one atom's momentum, N(0, σ²) in ħk units.
struct ThermalEnsemble {
    double sigma = 0;
    double nbar = 0;
    double omega_osc = 0; // rad/μs
    std::vector<double> nodes;
    std::vector<double> weights; // sum to 1

    // Golub-Welsch; an odd count keeps a node at zero. sigma = 0 collapses to one node.
    static ThermalEnsemble gauss_hermite(double sigma, int count);
    static ThermalEnsemble from_config(const GateConfig& config, int count);
};

enum class Logical { L00 = 0, L01 = 1, L10 = 2, L11 = 3 };

// Error mechanisms that can be switched off for budgeting.
struct Mechanisms {
    bool decay = true;
    bool motion = true;
    bool dipole_force = true;
};

struct GateOptions {
    Mechanisms mechanisms;
    int jobs = 0;                  // 0: all cores
    int nodes = 0;                 // per momentum axis; 0 uses the config value
    bool check_convergence = true; // re-run with 2N-1 nodes
    double convergence_tol = 1e-5;
};

struct GateResult {
    Configuration configuration = Configuration::DopplerFree;
    Eigen::Matrix4cd rho;          // logical order 00, 01, 10, 11
    Eigen::Matrix4cd rho_no_force; // same without the dipole-force factor
    double fidelity = 0;
    double fidelity_no_force = 0;
    std::array<double, 4> phases{}; // zero-momentum branch phases after local compensation
    double calibration_phase = 0;   // φ_cal, removed from each |0> atom
    double delta_p_rel = 0;         // ħk units
    double force_factor = 1;
    double loss = 0;                // 1 - Tr ρ
    double ground_return = 0;       // |a00|² at zero momentum
    double decay_exponent = 0;      // γT at zero momentum
    double excitation_time = 0;     // ∫(|c_B|² + 2|c_rr|²) dt at zero momentum, μs
    double gate_time = 0;
    double ramp_time = 0;
    double peak_time = 0;
    double hold_time = 0;
    int quadrature_nodes = 0;
    double convergence_delta = 0;   // |F(N) - F(2N-1)|, 0 if not checked

    double error() const { return 1.0 - fidelity; }
    double conditional_phase() const; // φ00 - φ01 - φ10 + φ11 wrapped to (-π, π]
};

// Propagates the logical branches for one config and schedule.
class GateEvaluator {
public:
    GateEvaluator(const GateConfig& config, const PulseSchedule& schedule, Mechanisms mechanisms = {});

    // Amplitude left in the initial logical state, with local phase compensation applied.
    std::complex<double> run_branch(Logical state, double p_a, double p_b) const;
    Trajectory pair_trajectory(double p_cm, double p_rel, int checkpoints = 0) const;
    Trajectory atom_trajectory(double p, int checkpoints = 0) const;

    GateResult assemble(int nodes, int jobs) const;

    double calibration_phase() const { return phi_cal_; }
    const HamiltonianModel& model() const { return model_; }
    const PulseSchedule& schedule() const { return schedule_; }

private:
    GateConfig config_;
    PulseSchedule schedule_;
    Mechanisms mechanisms_;
    HamiltonianModel model_;
    double phi_cal_ = 0;
};

std::complex<double> run_branch(const GateConfig& config, const PulseSchedule& schedule, Logical state, double p_a,
                                double p_b);

// Throws quadrature-unconverged if doubling the node count moves F by more than the tolerance.
GateResult assemble_rho(const GateConfig& config, const PulseSchedule& schedule, const GateOptions& options = {});

double fidelity_of(const Eigen::Matrix4cd& rho);

struct ErrorBudget {
    double diabatic = 0;
    double decay = 0;
    double doppler = 0;
    double dipole_force = 0;
    double cross = 0;
    double total = 0;
};
// Cumulative toggles: frozen and lossless, then +decay, +thermal motion, +dipole force.
// The all-mechanisms result is returned through full when given.
ErrorBudget error_budget(const GateConfig& config, const PulseSchedule& schedule, const GateOptions& options = {},
                         GateResult* full = nullptr);

struct ScanRow {
    double ramp_time = 0;
    double err_nomotion = 0;
    double err_single = 0;
    double err_dopplerfree = 0;
    double err_no_dipole_force = 0; // Doppler-free without the dipole-force factor
    double gate_time = 0;
};
struct ScanFailure {
    double ramp_time = 0;
    std::string message;
};
struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<ScanFailure> failures;
};
// Calibrates each ramp time to a π conditional phase; rows that fail are recorded and skipped.
ScanResult scan_ramp(const GateConfig& config, const std::vector<double>& ramp_times, const GateOptions& options = {});

} // namespace rydgate
