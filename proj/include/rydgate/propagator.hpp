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

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace rydgate {

// Writes H(t) into the supplied matrix (resized by the callee if needed).
using HamiltonianFn = std::function<void(double t, Eigen::MatrixXcd& h)>;

struct PropagationOptions {
    double tol = 1e-10;              // local error per unit time (absolute and relative)
    int checkpoints = 0;             // evenly spaced samples stored in the Trajectory
    std::vector<double> breakpoints; // kinks of H(t); steps are made to land on them
    std::vector<int> excitations;    // Rydberg excitations of each basis state
    std::vector<double> gradients;   // dV_dd/dz of each basis state (rad/μs/μm)
};

// Running integrals use populations normalised by the instantaneous norm, so for a
// decay-only non-Hermitian part ‖ψ(T)‖² = exp(-Γ·(I₁ + 2·I₂)) holds exactly.
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    Eigen::VectorXcd final_state;
    double final_norm2 = 1.0;
    double single_excitation_integral = 0; // ∫ Σ_{1 exc} |c|² dt (μs)
    double double_excitation_integral = 0; // ∫ Σ_{2 exc} |c|² dt (μs)
    double gradient_weighted_integral = 0; // ∫ Σ |c|² dV_dd/dz dt (1/μm, i.e. momentum with ħ = 1)
    int steps = 0;
    int rejected_steps = 0;

    // γT = Γ ∫ (|c_single|² + 2|c_double|²) dt
    double decay_exponent(double gamma) const
    {
        return gamma * (single_excitation_integral + 2.0 * double_excitation_integral);
    }
};

// Integrates i dψ/dt = H(t) ψ on [0, duration] with adaptive Dormand-Prince 5(4) steps.
// Throws stiff-failure if the step size underflows.
Trajectory propagate(const HamiltonianFn& hamiltonian_at, const Eigen::VectorXcd& psi0, double duration,
                     const PropagationOptions& options);

} // namespace rydgate
