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

#include "rydgate/dressing.hpp"

#include "rydgate/error.hpp"
#include "rydgate/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>

namespace rydgate {

namespace {

double sign_of(double x) { return x < 0 ? -1.0 : 1.0; }

// Positions of |00>, |B> (|B+>), |rr> (|r+r+>) inside the full pair basis.
std::array<int, 3> frozen_indices(Configuration c)
{
    if (c == Configuration::SingleLaser)
        return {0, 1, 3};
    return {0, 1, 5};
}

double integrate_schedule(const PulseSchedule& s, const std::function<double(const PulseSample&)>& f)
{
    auto ramp = [&](double tau) { return f(s.ramp(tau)); };
    double up = 0;
    if (s.peak_time > 0)
        up = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(ramp, 0.0, s.peak_time, 8, 1e-11);
    double hold = s.hold_time > 0 ? s.hold_time * f(s.ramp(s.peak_time)) : 0.0;
    return 2.0 * up + hold;
}

} // namespace

double light_shift_single(double rabi, double detuning)
{
    // ½(-Δ + sign(Δ)√(Δ²+Ω²)) rewritten without cancellation for Ω ≪ |Δ|.
    const double root = std::sqrt(detuning * detuning + rabi * rabi);
    if (root == 0)
        return 0.0;
    return 0.5 * sign_of(detuning) * rabi * rabi / (root + std::abs(detuning));
}

double light_shift_pair_blockaded(double rabi, double detuning)
{
    const double root = std::sqrt(detuning * detuning + 2.0 * rabi * rabi);
    if (root == 0)
        return 0.0;
    return sign_of(detuning) * rabi * rabi / (root + std::abs(detuning));
}

double interaction_J(double rabi, double detuning, double vdd)
{
    if (rabi == 0)
        return 0.0;
    return dressed_spectrum(rabi, detuning, vdd).ground_energy - 2.0 * light_shift_single(rabi, detuning);
}

DressedSpectrum dressed_spectrum(double rabi, double detuning, double vdd)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(frozen_block(rabi, detuning, vdd));
    DressedSpectrum d;
    d.energies = es.eigenvalues();
    d.vectors = es.eigenvectors();

    // The tridiagonal block has no level crossings for Ω > 0, so the branch of |00> keeps
    // its rank from Ω = 0; ties at Δ = 0 resolve as Δ → 0+.
    int above = (-detuning > 0 ? 1 : 0) + (vdd - 2.0 * detuning > 0 ? 1 : 0);
    d.ground = 2 - above;
    Eigen::Vector3d g = d.vectors.col(d.ground);
    if (g(0) < 0 || (g(0) == 0 && g(1) < 0))
        g = -g;
    d.vectors.col(d.ground) = g;
    d.ground_energy = d.energies(d.ground);
    d.c0 = g(0);
    d.c_b = g(1);
    d.c_rr = g(2);

    d.gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        if (i != d.ground)
            d.gap = std::min(d.gap, std::abs(d.energies(i) - d.ground_energy));
    if (d.gap < 1e-9) {
        std::ostringstream os;
        os << "dressed-ground gap " << d.gap << " at rabi " << rabi << ", detuning " << detuning;
        throw Error(ErrorKind::GapClosure, os.str());
    }
    return d;
}

DopplerPhase doppler_phase_terms(const PulseSchedule& schedule, const GateConfig& config, double p_cm, double p_rel)
{
    DopplerPhase out;
    if (p_cm == 0 && p_rel == 0)
        return out;

    ModelParams params = ModelParams::from(config);
    params.gamma = 0;
    const HamiltonianModel model(params);
    const auto idx = frozen_indices(config.configuration);
    const Eigen::MatrixXcd v = model.two_atom_doppler(p_cm, p_rel);
    const int n = model.pair_basis().size();

    auto terms = [&](const PulseSample& s) -> std::pair<double, double> {
        const DressedSpectrum d = dressed_spectrum(s.rabi, s.detuning, params.vdd_pp);
        Eigen::VectorXcd g0 = Eigen::VectorXcd::Zero(n);
        for (int k = 0; k < 3; ++k)
            g0(idx[k]) = d.vectors(k, d.ground);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(model.two_atom(s.rabi, s.detuning, 0, 0));
        const Eigen::MatrixXcd& u = es.eigenvectors();
        int g = 0;
        double best = -1;
        for (int k = 0; k < n; ++k) {
            double ov = std::abs(u.col(k).dot(g0));
            if (ov > best) {
                best = ov;
                g = k;
            }
        }
        const Eigen::VectorXcd vg = v * u.col(g);
        const double eg = es.eigenvalues()(g);
        double first = std::real(u.col(g).dot(vg));
        double second = 0;
        for (int e = 0; e < n; ++e) {
            if (e == g)
                continue;
            const double m2 = std::norm(u.col(e).dot(vg));
            if (m2 < 1e-28)
                continue;
            const double de = eg - es.eigenvalues()(e);
            if (std::abs(de) < 1e-9) {
                std::ostringstream os;
                os << "Doppler-coupled level degenerate with the dressed ground at rabi " << s.rabi
                   << ", detuning " << s.detuning;
                throw Error(ErrorKind::GapClosure, os.str());
            }
            second += m2 / de;
        }
        return {first, second};
    };

    out.first = integrate_schedule(schedule, [&](const PulseSample& s) { return terms(s).first; });
    out.second = integrate_schedule(schedule, [&](const PulseSample& s) { return terms(s).second; });
    return out;
}

double doppler_phase(const PulseSchedule& schedule, const GateConfig& config, double p_cm, double p_rel)
{
    const DopplerPhase t = doppler_phase_terms(schedule, config, p_cm, p_rel);
    return t.first + t.second;
}

double adiabatic_doppler_phase(const PulseSchedule& schedule, const GateConfig& config, double p_cm, double p_rel)
{
    if (p_cm == 0 && p_rel == 0)
        return 0.0;
    ModelParams params = ModelParams::from(config);
    params.gamma = 0;
    const HamiltonianModel model(params);
    const auto idx = frozen_indices(config.configuration);
    const int n = model.pair_basis().size();

    auto shift = [&](const PulseSample& s) {
        const DressedSpectrum d = dressed_spectrum(s.rabi, s.detuning, params.vdd_pp);
        Eigen::VectorXcd g0 = Eigen::VectorXcd::Zero(n);
        for (int k = 0; k < 3; ++k)
            g0(idx[k]) = d.vectors(k, d.ground);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(model.two_atom(s.rabi, s.detuning, p_cm, p_rel));
        int g = 0;
        double best = -1;
        for (int k = 0; k < n; ++k) {
            const double ov = std::abs(es.eigenvectors().col(k).dot(g0));
            if (ov > best) {
                best = ov;
                g = k;
            }
        }
        return es.eigenvalues()(g) - d.ground_energy;
    };
    return integrate_schedule(schedule, shift);
}

double dipole_kick(const Trajectory& trajectory, const GateConfig& config)
{
    return trajectory.gradient_weighted_integral / derive(config).k_l;
}

} // namespace rydgate
