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
#include "rydgate/error.hpp"
#include "rydgate/pulse.hpp"

#include <cmath>

using namespace rydgate;

namespace {

GateConfig fig2()
{
    GateConfig g;
    g.configuration = Configuration::DopplerFree;
    g.rabi_max = 3;
    g.detuning_start = 6;
    g.detuning_end = 0;
    g.gamma = 0.0037;
    g.separation = 5;
    g.nbar = 5;
    g.ramp_time = 1;
    return g;
}

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidParameter;
}

} // namespace

TEST_CASE("schedule boundaries and peak")
{
    GateConfig g = fig2();
    g.hold_time = 0.4;
    const PulseSchedule s = PulseSchedule::from_config(g);
    CHECK(s.total_time() == doctest::Approx(2.4));
    for (double t : {0.0, s.total_time()}) {
        const PulseSample p = evaluate(s, t);
        CHECK(p.rabi == doctest::Approx(0.0).scale(1));
        CHECK(p.detuning == doctest::Approx(6 * kTwoPi));
    }
    for (double t : {1.0, 1.2, 1.4}) {
        const PulseSample p = evaluate(s, t);
        CHECK(p.rabi == doctest::Approx(3 * kTwoPi));
        CHECK(p.detuning == doctest::Approx(0.0).scale(1));
    }
    CHECK(evaluate(s, 0.5).rabi == doctest::Approx(1.5 * kTwoPi));
    CHECK(s.breakpoints() == std::vector<double>{1.0, 1.4});
}

TEST_CASE("schedule is mirror symmetric and continuous")
{
    GateConfig g = fig2();
    g.hold_time = 0.3;
    for (RampShape shape : {RampShape::SmoothstepSin2, RampShape::Linear}) {
        g.shape = shape;
        const PulseSchedule s = PulseSchedule::from_config(g);
        const double total = s.total_time();
        for (int k = 0; k <= 200; ++k) {
            const double t = total * k / 200;
            const PulseSample a = evaluate(s, t), b = evaluate(s, total - t);
            CHECK(a.rabi == doctest::Approx(b.rabi).epsilon(1e-12).scale(1));
            CHECK(a.detuning == doctest::Approx(b.detuning).epsilon(1e-12).scale(1));
            CHECK(a.rabi >= 0);
        }
        for (double b : s.breakpoints()) {
            const PulseSample l = evaluate(s, b - 1e-9), r = evaluate(s, b + 1e-9);
            CHECK(std::abs(l.rabi - r.rabi) < 1e-6);
            CHECK(std::abs(l.detuning - r.detuning) < 1e-6);
        }
    }
}

TEST_CASE("rates match finite differences")
{
    GateConfig g = fig2();
    g.hold_time = 0.2;
    for (RampShape shape : {RampShape::SmoothstepSin2, RampShape::Linear}) {
        g.shape = shape;
        const PulseSchedule s = PulseSchedule::from_config(g);
        for (double t : {0.1, 0.37, 0.8, 1.1, 1.35, 1.9, 2.1}) {
            const double h = 1e-6;
            const PulseSample r = rates(s, t);
            const PulseSample a = evaluate(s, t + h), b = evaluate(s, t - h);
            CHECK(r.rabi == doctest::Approx((a.rabi - b.rabi) / (2 * h)).epsilon(1e-6).scale(1));
            CHECK(r.detuning == doctest::Approx((a.detuning - b.detuning) / (2 * h)).epsilon(1e-6).scale(1));
        }
    }
    // The smooth ramp starts and ends flat.
    const PulseSchedule s = PulseSchedule::from_config(fig2());
    CHECK(std::abs(rates(s, 0.0).rabi) < 1e-12);
    CHECK(std::abs(rates(s, 1.0).rabi) < 1e-12);
}

TEST_CASE("times outside the schedule are rejected")
{
    const PulseSchedule s = PulseSchedule::from_config(fig2());
    CHECK(kind_of([&] { evaluate(s, -0.01); }) == ErrorKind::OutOfSchedule);
    CHECK(kind_of([&] { rates(s, s.total_time() + 0.01); }) == ErrorKind::OutOfSchedule);
    CHECK(kind_of([&] { evaluate(s, std::nan("")); }) == ErrorKind::OutOfSchedule);
}

TEST_CASE("piecewise schedules pass through their nodes")
{
    GateConfig g = fig2();
    g.shape = RampShape::PiecewiseNodes;
    g.nodes = {{0.0, 0.0, 6.0}, {0.3, 0.8, 4.5}, {0.6, 2.2, 1.5}, {1.0, 3.0, 0.0}};
    const PulseSchedule s = PulseSchedule::from_config(g);
    REQUIRE(s.nodes.size() == 2);
    for (const ControlPoint& c : g.nodes) {
        const PulseSample p = evaluate(s, c.time);
        CHECK(p.rabi == doctest::Approx(kTwoPi * c.rabi).scale(1));
        CHECK(p.detuning == doctest::Approx(kTwoPi * c.detuning).scale(1));
    }
    CHECK(std::abs(rates(s, 0.0).rabi) < 1e-12);
    CHECK(std::abs(rates(s, 0.999999).rabi) < 1e-3);
    const double total = s.total_time();
    CHECK(evaluate(s, total - 0.3).rabi == doctest::Approx(kTwoPi * 0.8));

    // Two nodes only: straight line.
    g.nodes = {{0.0, 0.0, 6.0}, {1.0, 3.0, 0.0}};
    const PulseSchedule line = PulseSchedule::from_config(g);
    CHECK(evaluate(line, 0.25).rabi == doctest::Approx(0.75 * kTwoPi));
}

TEST_CASE("adiabaticity margin scales inversely with the ramp time")
{
    GateConfig g = fig2();
    const double m1 = adiabaticity_margin(PulseSchedule::from_config(g), g);
    g.ramp_time = 2;
    const double m2 = adiabaticity_margin(PulseSchedule::from_config(g), g);
    g.ramp_time = 4;
    const double m4 = adiabaticity_margin(PulseSchedule::from_config(g), g);
    CHECK(m1 > 0);
    CHECK(m2 < m1);
    CHECK(m4 < m2);
    CHECK(m1 / m2 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(m2 / m4 == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("closing gap is reported")
{
    GateConfig g = fig2();
    g.detuning_start = 0;
    g.separation = 1000; // no interaction: |00>, B and rr all degenerate at t = 0
    CHECK(kind_of([&] { adiabaticity_margin(PulseSchedule::from_config(g), g); }) == ErrorKind::GapClosure);
}

TEST_CASE("calibration reaches the conditional phase target")
{
    const GateConfig g = fig2();
    const PulseSchedule s = calibrate_hold(g, M_PI);
    CHECK(s.peak_time == s.ramp_time);
    CHECK(s.total_time() > 2.2);
    CHECK(s.total_time() < 2.4);
    const PhaseRecord r = measure_phases(g, s);
    CHECK(std::abs(std::remainder(r.conditional_phase - M_PI, kTwoPi)) < 1e-4);

    // Phase moves through the target as the hold is varied.
    PulseSchedule lo = s, hi = s;
    lo.hold_time -= 0.02;
    hi.hold_time += 0.02;
    const double a = std::remainder(measure_phases(g, lo).conditional_phase - M_PI, kTwoPi);
    const double b = std::remainder(measure_phases(g, hi).conditional_phase - M_PI, kTwoPi);
    CHECK(a * b < 0);
}

TEST_CASE("calibration to the bare ramp phase is a no-op")
{
    GateConfig g = fig2();
    g.hold_time = 0.0;
    const double ramp_only = measure_phases(g, PulseSchedule::from_config(g)).conditional_phase;
    const PulseSchedule s = calibrate_hold(g, ramp_only);
    CHECK(s.hold_time == 0.0);
    CHECK(s.peak_time == s.ramp_time);
}

TEST_CASE("long ramps truncate the peak")
{
    GateConfig g = fig2();
    g.ramp_time = 3;
    const PulseSchedule s = calibrate_hold(g, M_PI);
    CHECK(s.hold_time == 0.0);
    CHECK(s.peak_time < s.ramp_time);
    CHECK(s.total_time() == doctest::Approx(2 * s.peak_time));
    const PhaseRecord r = measure_phases(g, s);
    CHECK(std::abs(std::remainder(r.conditional_phase - M_PI, kTwoPi)) < 1e-4);
}

TEST_CASE("unreachable phase is reported")
{
    GateConfig g = fig2();
    g.ramp_time = 0.2;
    g.max_hold_time = 0.05;
    CHECK(kind_of([&] { calibrate_hold(g, M_PI); }) == ErrorKind::PhaseUnreachable);
}
