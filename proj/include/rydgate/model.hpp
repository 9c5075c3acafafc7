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

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rydgate {

enum class BasisKind { SingleLaserPair, DopplerFreePair, SingleLaserAtom, DopplerFreeAtom };

// Ordered electronic basis.
//   SingleLaserPair: |00>, |B>, |D>, |rr>
//   DopplerFreePair: |00>, |B+>, |D+>, |B->, |D->, |r+r+>, |r+r->, |r-r+>, |r-r->
//   SingleLaserAtom: |0>, |r>
//   DopplerFreeAtom: |0>, |r+>, |r->
// with |B> = (|r0> + |0r>)/√2 and |D> = (|r0> - |0r>)/√2; the first atom label refers to atom a.
struct ElectronicBasis {
    BasisKind kind;
    std::vector<std::string> labels;
    std::vector<int> excitations; // Rydberg excitations per basis state

    static ElectronicBasis pair(Configuration c);
    static ElectronicBasis atom(Configuration c);

    int size() const { return static_cast<int>(labels.size()); }
    int index_of(const std::string& label) const;
};

// Model inputs in internal units, decoupled from the user-facing config so that
// individual mechanisms (decay, dipole shifts) can be switched independently.
struct ModelParams {
    Configuration configuration = Configuration::DopplerFree;
    double doppler_per_hbar_k = 0; // rad/μs per ħk
    double gamma = 0;              // rad/μs
    double vdd_pp = 0, vdd_pm = 0, vdd_mm = 0;
    double grad_pp = 0, grad_pm = 0, grad_mm = 0;

    static ModelParams from(const GateConfig& config);
};

struct HamiltonianMatrix {
    Eigen::MatrixXcd matrix;
    BasisKind basis = BasisKind::SingleLaserPair;
    double rabi = 0;
    double detuning = 0;
    double p_cm = 0;
    double p_rel = 0;
    double gamma = 0;
};

// V_dd(z) = -C6/z^n in rad/μs and dV_dd/dz in rad/μs/μm. Throws invalid-separation for z <= 0.
double dipole_potential(const GateConfig& config, double z);
double dipole_gradient(const GateConfig& config, double z);

// Hamiltonians are affine in (Ω, Δ, per-atom Doppler shifts), so every builder is a
// weighted sum of fixed term matrices computed once per model.
class HamiltonianModel {
public:
    explicit HamiltonianModel(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    const ElectronicBasis& pair_basis() const { return pair_basis_; }
    const ElectronicBasis& atom_basis() const { return atom_basis_; }

    // Two-atom H0 + V_Dop at centre-of-mass momentum P = p_a + p_b and relative
    // momentum p_rel = (p_b - p_a)/2 (ħk units). Kinetic energy is omitted.
    Eigen::MatrixXcd two_atom(double rabi, double detuning, double p_cm, double p_rel) const;
    void two_atom(double rabi, double detuning, double p_cm, double p_rel, Eigen::MatrixXcd& out) const;

    // Single-atom Hamiltonian in the comoving frame at momentum p (ħk units).
    Eigen::MatrixXcd single_atom(double rabi, double detuning, double p) const;
    void single_atom(double rabi, double detuning, double p, Eigen::MatrixXcd& out) const;

    // Pure Doppler part of the two-atom Hamiltonian (linear in the momenta).
    Eigen::MatrixXcd two_atom_doppler(double p_cm, double p_rel) const;

    // dV_dd/dz of each pair basis state (zero for states with fewer than two excitations).
    std::vector<double> pair_gradients() const;

private:
    struct Terms {
        Eigen::MatrixXcd rabi, detuning, doppler_a, doppler_b, constant;
    };

    ModelParams params_;
    ElectronicBasis pair_basis_;
    ElectronicBasis atom_basis_;
    Terms pair_;
    Terms atom_;
};

HamiltonianMatrix build_two_atom(const ModelParams& params, double rabi, double detuning, double p_cm, double p_rel);
HamiltonianMatrix build_two_atom(const GateConfig& config, double rabi, double detuning, double p_cm, double p_rel);
HamiltonianMatrix build_single_atom(const ModelParams& params, double rabi, double detuning, double p);
HamiltonianMatrix build_single_atom(const GateConfig& config, double rabi, double detuning, double p);

// Throws model-mismatch if the basis does not belong to the configuration.
void check_basis(const ModelParams& params, const ElectronicBasis& basis);

// Frozen-atom block on {|00>, |B>, |rr>} (Γ = 0): real symmetric.
Eigen::Matrix3d frozen_block(double rabi, double detuning, double vdd);

} // namespace rydgate
