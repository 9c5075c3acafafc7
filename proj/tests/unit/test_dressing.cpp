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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydgate/config.hpp"
#include "rydgate/dressing.hpp"
#include "rydgate/error.hpp"
#include "rydgate/model.hpp"
#include "rydgate/pulse.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace rydgate;

namespace {

GateConfig fig2(Configuration c = Configuration::DopplerFree)
{
    GateConfig g;
    g.configuration = c;
    g.rabi_max = 3;
    g.detuning_start = 6;
    g.detuning_end = 0;
    g.separation = 5;
    g.nbar = 5;
    g.ramp_time = 1;
    g.hold_time = 0.3;
    return g;
}

// Eigenvalue of the branch with the largest ground-state weight.
template <int N>
double ground_branch(const Eigen::Matrix<double, N, N>& h)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(h);
    int best = 0;
    for (int k = 1; k < N; ++k)
        if (std::abs(es.eigenvectors()(0, k)) > std::abs(es.eigenvectors()(0, best)))
            best = k;
    return es.eigenvalues()(best);
}

double two_level(double rabi, double detuning, double coupling_scale)
{
    Eigen::Matrix2d h;
    h << 0, coupling_scale * rabi / 2, coupling_scale * rabi / 2, -detuning;
    return ground_branch<2>(h);
}

} // namespace

TEST_CASE("single-atom light shift")
{
    CHECK(light_shift_single(0, 3) == 0.0);
    CHECK(light_shift_single(2, 0) == doctest::Approx(1.0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 10000; ++k) {
        const double om = 50 * std::abs(u(rng)), de = 50 * u(rng);
        const double scale = std::max(om, std::abs(de));
        CHECK(std::abs(light_shift_single(om, de) - two_level(om, de, 1)) <= 1e-12 * scale);
    }
    // Far detuned: Ω²/4Δ with no cancellation loss.
    CHECK(light_shift_single(1e-6, 10) == doctest::Approx(1e-12 / 40).epsilon(1e-12));
}

TEST_CASE("light shifts and interaction at the caption drive")
{
    const double om = 3 * kTwoPi, de = 6 * kTwoPi;
    CHECK(light_shift_single(om, de) / kTwoPi == doctest::Approx(0.35410).epsilon(1e-4));
    CHECK(light_shift_pair_blockaded(om, de) / kTwoPi == doctest::Approx(0.67423).epsilon(1e-4));
    CHECK(interaction_J(om, de, -1e12) / kTwoPi == doctest::Approx(-0.03397).epsilon(1e-3));

    // Resonant peak with the finite blockade.
    const DressedSpectrum d = dressed_spectrum(om, 0.0, -6.4 * kTwoPi);
    CHECK(d.ground_energy / kTwoPi == doctest::Approx(2.39260).epsilon(1e-5));
    CHECK(d.c_rr * d.c_rr > 0.0);
}

TEST_CASE("gauge: a common energy offset changes no coefficient")
{
    const double om = 2.2 * kTwoPi, de = 1.3 * kTwoPi, v = -6.4 * kTwoPi;
    const DressedSpectrum d = dressed_spectrum(om, de, v);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(frozen_block(om, de, v) + 17.0 * Eigen::Matrix3d::Identity());
    Eigen::Vector3d g = es.eigenvectors().col(d.ground);
    CHECK(std::abs(std::abs(g(0)) - d.c0) < 1e-12);
    CHECK(std::abs(std::abs(g(1)) - std::abs(d.c_b)) < 1e-12);
    CHECK(std::abs(std::abs(g(2)) - std::abs(d.c_rr)) < 1e-12);
    CHECK(es.eigenvalues()(d.ground) - 17.0 - 2 * light_shift_single(om, de) ==
          doctest::Approx(interaction_J(om, de, v)).epsilon(1e-12));
}

TEST_CASE("blockaded pair light shift")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 10000; ++k) {
        const double om = 50 * std::abs(u(rng)), de = 50 * u(rng);
        const double scale = std::max(om, std::abs(de));
        CHECK(std::abs(light_shift_pair_blockaded(om, de) - two_level(om, de, std::sqrt(2.0))) <= 1e-12 * scale);
    }
    // Infinite interaction leaves only the two-level pair problem.
    for (double de : {-9.0, 4.0, 17.0}) {
        const double om = 6.0;
        const double exact = dressed_spectrum(om, de, -1e9).ground_energy;
        CHECK(exact == doctest::Approx(light_shift_pair_blockaded(om, de)).epsilon(1e-6));
        CHECK(interaction_J(om, de, -1e9) ==
              doctest::Approx(light_shift_pair_blockaded(om, de) - 2 * light_shift_single(om, de)).epsilon(1e-5));
    }
}

TEST_CASE("interaction energy from the three-level ground")
{
    const double om = 3 * kTwoPi, de = 1.5 * kTwoPi, v = -6.4 * kTwoPi;
    const double ep = ground_branch<3>(frozen_block(om, de, v));
    CHECK(interaction_J(om, de, v) == doctest::Approx(ep - 2 * two_level(om, de, 1)).epsilon(1e-12));
    CHECK(interaction_J(0, de, v) == 0.0);
    CHECK(interaction_J(0, 0, v) == 0.0);
}

TEST_CASE("weak dressing follows the fourth-order formula")
{
    const double v = -6.4 * kTwoPi;
    for (double de : {4 * kTwoPi, 10 * kTwoPi, -8 * kTwoPi}) {
        const double om = 0.02 * std::abs(de);
        const double j4 = std::pow(om, 4) / (8 * std::pow(de, 3)) * v / (2 * de - v);
        CHECK(interaction_J(om, de, v) == doctest::Approx(j4).epsilon(2e-3));
    }
}

TEST_CASE("dressed spectrum")
{
    const DressedSpectrum weak = dressed_spectrum(1e-3, 6 * kTwoPi, -6.4 * kTwoPi);
    CHECK(weak.c0 == doctest::Approx(1.0));
    CHECK(std::abs(weak.ground_energy) < 1e-6);
    const DressedSpectrum d = dressed_spectrum(3 * kTwoPi, 0.7 * kTwoPi, -6.4 * kTwoPi);
    CHECK(d.energies(0) <= d.energies(1));
    CHECK(d.energies(1) <= d.energies(2));
    CHECK((d.vectors.transpose() * d.vectors - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(d.c0 > 0);
    CHECK(d.c0 * d.c0 + d.c_b * d.c_b + d.c_rr * d.c_rr == doctest::Approx(1.0));
    CHECK(d.gap > 0);
    // The ground follows |00> through the sweep to Δ = 0.
    Eigen::Vector3d prev(1, 0, 0);
    double tracked = 0;
    for (int k = 1; k <= 4000; ++k) {
        const double f = k / 4000.0;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(frozen_block(3 * kTwoPi * f, 6 * kTwoPi * (1 - f), -6.4 * kTwoPi));
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(es.eigenvectors().col(i).dot(prev)) > std::abs(es.eigenvectors().col(best).dot(prev)))
                best = i;
        prev = es.eigenvectors().col(best);
        tracked = es.eigenvalues()(best);
    }
    const DressedSpectrum z = dressed_spectrum(3 * kTwoPi, 0.0, -6.4 * kTwoPi);
    CHECK(z.ground_energy == doctest::Approx(tracked).epsilon(1e-12));
    try {
        dressed_spectrum(0, 0, 0);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GapClosure);
    }
}

TEST_CASE("Doppler phase vanishes at rest")
{
    for (Configuration c : {Configuration::SingleLaser, Configuration::DopplerFree}) {
        const GateConfig g = fig2(c);
        const PulseSchedule s = PulseSchedule::from_config(g);
        CHECK(doppler_phase(s, g, 0, 0) == 0.0);
        CHECK(adiabatic_doppler_phase(s, g, 0, 0) == doctest::Approx(0.0).scale(1));
    }
}

TEST_CASE("single-laser first-order Doppler phase is the weighted excitation time")
{
    const GateConfig g = fig2(Configuration::SingleLaser);
    const PulseSchedule s = PulseSchedule::from_config(g);
    const DerivedParams d = derive(g);
    const double P = 0.3;
    // Midpoint rule over the whole schedule.
    const int n = 20000;
    double integral = 0;
    for (int k = 0; k < n; ++k) {
        const double t = s.total_time() * (k + 0.5) / n;
        const PulseSample p = evaluate(s, t);
        const DressedSpectrum ds = dressed_spectrum(p.rabi, p.detuning, d.vdd_pp);
        integral += (0.5 * ds.c_b * ds.c_b + ds.c_rr * ds.c_rr) * s.total_time() / n;
    }
    const DopplerPhase t = doppler_phase_terms(s, g, P, 0);
    CHECK(t.first == doctest::Approx(d.doppler_per_hbar_k * P * integral).epsilon(1e-6));
}

TEST_CASE("doppler-free Doppler phase is even and second order")
{
    const GateConfig g = fig2(Configuration::DopplerFree);
    const PulseSchedule s = PulseSchedule::from_config(g);
    for (double P : {0.05, 0.2}) {
        for (double pr : {0.0, 0.1}) {
            const DopplerPhase a = doppler_phase_terms(s, g, P, pr);
            const DopplerPhase b = doppler_phase_terms(s, g, -P, -pr);
            CHECK(std::abs(a.first) < 1e-12);
            CHECK(a.second == doctest::Approx(b.second).epsilon(1e-10));
        }
    }
    const double r = doppler_phase(s, g, 0.2, 0) / doppler_phase(s, g, 0.1, 0);
    CHECK(r == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("perturbative phase agrees with exact diagonalisation")
{
    for (Configuration c : {Configuration::SingleLaser, Configuration::DopplerFree}) {
        const GateConfig g = fig2(c);
        const PulseSchedule s = PulseSchedule::from_config(g);
        auto residual = [&](double P) { return std::abs(doppler_phase(s, g, P, 0) - adiabatic_doppler_phase(s, g, P, 0)); };
        const double r1 = residual(0.2), r2 = residual(0.1);
        CHECK(r1 < 1e-3 * std::abs(doppler_phase(s, g, 0.2, 0)));
        CHECK(std::log2(r1 / r2) > 2.5);
    }
}

TEST_CASE("dipole kick is the gradient integral in units of the photon momentum")
{
    GateConfig g = fig2();
    Trajectory tr;
    tr.gradient_weighted_integral = 3.0;
    CHECK(dipole_kick(tr, g) == doctest::Approx(3.0 * 0.319 / kTwoPi));

    auto kick = [](const GateConfig& c) {
        ModelParams p = ModelParams::from(c);
        p.gamma = 0;
        const HamiltonianModel m(p);
        const PulseSchedule s = PulseSchedule::from_config(c);
        PropagationOptions o;
        o.gradients = m.pair_gradients();
        auto h = [&](double t, Eigen::MatrixXcd& out) {
            const PulseSample q = evaluate(s, t);
            m.two_atom(q.rabi, q.detuning, 0, 0, out);
        };
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(m.pair_basis().size());
        psi(0) = 1;
        return dipole_kick(propagate(h, psi, s.total_time(), o), c);
    };
    const double base = kick(g);
    CHECK(base > 0);
    g.rabi_max = 6;
    CHECK(kick(g) > 2 * base);
    g.rabi_max = 3;
    g.separation = 1.5;
    CHECK(kick(g) < 1e-2 * base);
}
