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

#include "rydgate/model.hpp"

#include "rydgate/error.hpp"

#include <cmath>
#include <complex>

namespace rydgate {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Single-atom product-space pieces; index 0 is the ground state |0>.
struct AtomTerms {
    int dim;
    MatrixXcd rabi, detuning, doppler;
    std::vector<int> excitations;
};

AtomTerms atom_terms(Configuration c)
{
    AtomTerms t;
    t.dim = c == Configuration::SingleLaser ? 2 : 3;
    t.rabi = MatrixXcd::Zero(t.dim, t.dim);
    t.detuning = MatrixXcd::Zero(t.dim, t.dim);
    t.doppler = MatrixXcd::Zero(t.dim, t.dim);
    t.excitations.assign(t.dim, 1);
    t.excitations[0] = 0;
    // The laser addresses |r> (|r+> for the counterpropagating pair) with Ω/2.
    t.rabi(0, 1) = t.rabi(1, 0) = 0.5;
    for (int i = 1; i < t.dim; ++i)
        t.detuning(i, i) = -1.0;
    if (c == Configuration::SingleLaser) {
        t.doppler(1, 1) = 1.0;
    } else {
        t.doppler(1, 2) = t.doppler(2, 1) = 1.0;
    }
    return t;
}

// Columns are the named pair basis states expressed in the product basis |a> ⊗ |b>.
MatrixXcd pair_transform(Configuration c)
{
    const int s = c == Configuration::SingleLaser ? 2 : 3;
    auto idx = [s](int a, int b) { return a * s + b; };
    const int n = s * s;
    MatrixXcd u = MatrixXcd::Zero(n, n);
    int col = 0;
    u(idx(0, 0), col++) = 1.0;
    for (int r = 1; r < s; ++r) {
        u(idx(r, 0), col) = kInvSqrt2;
        u(idx(0, r), col) = kInvSqrt2;
        ++col;
        u(idx(r, 0), col) = kInvSqrt2;
        u(idx(0, r), col) = -kInvSqrt2;
        ++col;
    }
    for (int a = 1; a < s; ++a)
        for (int b = 1; b < s; ++b)
            u(idx(a, b), col++) = 1.0;
    return u;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b)
{
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double pair_potential(const ModelParams& p, int a, int b)
{
    if (p.configuration == Configuration::SingleLaser)
        return p.vdd_pp;
    if (a == 1 && b == 1)
        return p.vdd_pp;
    if (a == 2 && b == 2)
        return p.vdd_mm;
    return p.vdd_pm;
}

double pair_gradient(const ModelParams& p, int a, int b)
{
    if (p.configuration == Configuration::SingleLaser)
        return p.grad_pp;
    if (a == 1 && b == 1)
        return p.grad_pp;
    if (a == 2 && b == 2)
        return p.grad_mm;
    return p.grad_pm;
}

void assemble(const MatrixXcd& rabi, const MatrixXcd& detuning, const MatrixXcd& doppler_a,
              const MatrixXcd& doppler_b, const MatrixXcd& constant, double omega, double delta, double shift_a,
              double shift_b, MatrixXcd& out)
{
    out = constant;
    out.noalias() += omega * rabi;
    out.noalias() += delta * detuning;
    if (shift_a != 0)
        out.noalias() += shift_a * doppler_a;
    if (shift_b != 0)
        out.noalias() += shift_b * doppler_b;
}

} // namespace

ElectronicBasis ElectronicBasis::pair(Configuration c)
{
    if (c == Configuration::SingleLaser)
        return {BasisKind::SingleLaserPair, {"00", "B", "D", "rr"}, {0, 1, 1, 2}};
    return {BasisKind::DopplerFreePair,
            {"00", "B+", "D+", "B-", "D-", "r+r+", "r+r-", "r-r+", "r-r-"},
            {0, 1, 1, 1, 1, 2, 2, 2, 2}};
}

ElectronicBasis ElectronicBasis::atom(Configuration c)
{
    if (c == Configuration::SingleLaser)
        return {BasisKind::SingleLaserAtom, {"0", "r"}, {0, 1}};
    return {BasisKind::DopplerFreeAtom, {"0", "r+", "r-"}, {0, 1, 1}};
}

int ElectronicBasis::index_of(const std::string& label) const
{
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label)
            return i;
    return -1;
}

ModelParams ModelParams::from(const GateConfig& config)
{
    const DerivedParams d = derive(config);
    ModelParams p;
    p.configuration = config.configuration;
    p.doppler_per_hbar_k = d.doppler_per_hbar_k;
    p.gamma = d.gamma;
    p.vdd_pp = d.vdd_pp;
    p.vdd_pm = d.vdd_pm;
    p.vdd_mm = d.vdd_mm;
    p.grad_pp = d.grad_pp;
    p.grad_pm = d.grad_pm;
    p.grad_mm = d.grad_mm;
    return p;
}

double dipole_potential(const GateConfig& config, double z)
{
    if (!(z > 0))
        throw Error(ErrorKind::InvalidSeparation, "z must be > 0, got " + std::to_string(z));
    return -kTwoPi * config.c6 / std::pow(z, config.vdd_exponent);
}

double dipole_gradient(const GateConfig& config, double z)
{
    if (!(z > 0))
        throw Error(ErrorKind::InvalidSeparation, "z must be > 0, got " + std::to_string(z));
    return config.vdd_exponent * kTwoPi * config.c6 / std::pow(z, config.vdd_exponent + 1);
}

HamiltonianModel::HamiltonianModel(const ModelParams& params)
    : params_(params), pair_basis_(ElectronicBasis::pair(params.configuration)),
      atom_basis_(ElectronicBasis::atom(params.configuration))
{
    const AtomTerms t = atom_terms(params.configuration);
    const MatrixXcd id = MatrixXcd::Identity(t.dim, t.dim);

    atom_.rabi = t.rabi;
    atom_.detuning = t.detuning;
    atom_.doppler_a = t.doppler;
    atom_.doppler_b = MatrixXcd::Zero(t.dim, t.dim);
    atom_.constant = MatrixXcd::Zero(t.dim, t.dim);
    for (int i = 1; i < t.dim; ++i)
        atom_.constant(i, i) = cd(0, -0.5 * params.gamma);

    const int n = t.dim * t.dim;
    MatrixXcd constant = MatrixXcd::Zero(n, n);
    for (int a = 0; a < t.dim; ++a) {
        for (int b = 0; b < t.dim; ++b) {
            const int excited = t.excitations[a] + t.excitations[b];
            double v = excited == 2 ? pair_potential(params, a, b) : 0.0;
            constant(a * t.dim + b, a * t.dim + b) = cd(v, -0.5 * params.gamma * excited);
        }
    }

    const MatrixXcd u = pair_transform(params.configuration);
    auto to_named = [&u](const MatrixXcd& m) -> MatrixXcd { return u.adjoint() * m * u; };
    pair_.rabi = to_named(kron(t.rabi, id) + kron(id, t.rabi));
    pair_.detuning = to_named(kron(t.detuning, id) + kron(id, t.detuning));
    pair_.doppler_a = to_named(kron(t.doppler, id));
    pair_.doppler_b = to_named(kron(id, t.doppler));
    pair_.constant = to_named(constant);

    // Exact zeros keep the Γ = 0 matrices exactly Hermitian.
    for (MatrixXcd* m : {&pair_.rabi, &pair_.detuning, &pair_.doppler_a, &pair_.doppler_b, &pair_.constant})
        for (int i = 0; i < m->size(); ++i)
            if (std::abs((*m)(i)) < 1e-15)
                (*m)(i) = 0.0;
}

void HamiltonianModel::two_atom(double rabi, double detuning, double p_cm, double p_rel, MatrixXcd& out) const
{
    const double p_a = 0.5 * p_cm - p_rel;
    const double p_b = 0.5 * p_cm + p_rel;
    assemble(pair_.rabi, pair_.detuning, pair_.doppler_a, pair_.doppler_b, pair_.constant, rabi, detuning,
             params_.doppler_per_hbar_k * p_a, params_.doppler_per_hbar_k * p_b, out);
}

MatrixXcd HamiltonianModel::two_atom(double rabi, double detuning, double p_cm, double p_rel) const
{
    MatrixXcd out;
    two_atom(rabi, detuning, p_cm, p_rel, out);
    return out;
}

void HamiltonianModel::single_atom(double rabi, double detuning, double p, MatrixXcd& out) const
{
    assemble(atom_.rabi, atom_.detuning, atom_.doppler_a, atom_.doppler_b, atom_.constant, rabi, detuning,
             params_.doppler_per_hbar_k * p, 0.0, out);
}

MatrixXcd HamiltonianModel::single_atom(double rabi, double detuning, double p) const
{
    MatrixXcd out;
    single_atom(rabi, detuning, p, out);
    return out;
}

MatrixXcd HamiltonianModel::two_atom_doppler(double p_cm, double p_rel) const
{
    const double p_a = 0.5 * p_cm - p_rel;
    const double p_b = 0.5 * p_cm + p_rel;
    return params_.doppler_per_hbar_k * (p_a * pair_.doppler_a + p_b * pair_.doppler_b);
}

std::vector<double> HamiltonianModel::pair_gradients() const
{
    std::vector<double> g(pair_basis_.size(), 0.0);
    if (params_.configuration == Configuration::SingleLaser) {
        g[3] = params_.grad_pp;
    } else {
        g[5] = pair_gradient(params_, 1, 1);
        g[6] = pair_gradient(params_, 1, 2);
        g[7] = pair_gradient(params_, 2, 1);
        g[8] = pair_gradient(params_, 2, 2);
    }
    return g;
}

HamiltonianMatrix build_two_atom(const ModelParams& params, double rabi, double detuning, double p_cm, double p_rel)
{
    HamiltonianModel model(params);
    HamiltonianMatrix h;
    h.matrix = model.two_atom(rabi, detuning, p_cm, p_rel);
    h.basis = model.pair_basis().kind;
    h.rabi = rabi;
    h.detuning = detuning;
    h.p_cm = p_cm;
    h.p_rel = p_rel;
    h.gamma = params.gamma;
    return h;
}

HamiltonianMatrix build_two_atom(const GateConfig& config, double rabi, double detuning, double p_cm, double p_rel)
{
    return build_two_atom(ModelParams::from(config), rabi, detuning, p_cm, p_rel);
}

HamiltonianMatrix build_single_atom(const ModelParams& params, double rabi, double detuning, double p)
{
    HamiltonianModel model(params);
    HamiltonianMatrix h;
    h.matrix = model.single_atom(rabi, detuning, p);
    h.basis = model.atom_basis().kind;
    h.rabi = rabi;
    h.detuning = detuning;
    h.p_cm = p;
    h.gamma = params.gamma;
    return h;
}

HamiltonianMatrix build_single_atom(const GateConfig& config, double rabi, double detuning, double p)
{
    return build_single_atom(ModelParams::from(config), rabi, detuning, p);
}

void check_basis(const ModelParams& params, const ElectronicBasis& basis)
{
    const bool single = params.configuration == Configuration::SingleLaser;
    const bool ok = single ? (basis.kind == BasisKind::SingleLaserPair || basis.kind == BasisKind::SingleLaserAtom)
                           : (basis.kind == BasisKind::DopplerFreePair || basis.kind == BasisKind::DopplerFreeAtom);
    if (!ok)
        throw Error(ErrorKind::ModelMismatch, std::string("basis does not belong to configuration ") +
                                                  std::string(configuration_name(params.configuration)));
}

Eigen::Matrix3d frozen_block(double rabi, double detuning, double vdd)
{
    const double c = std::sqrt(2.0) * rabi / 2.0;
    Eigen::Matrix3d h;
    h << 0, c, 0,
         c, -detuning, c,
         0, c, vdd - 2.0 * detuning;
    return h;
}

} // namespace rydgate
