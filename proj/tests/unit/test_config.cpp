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

#include <cmath>
#include <random>
#include <sstream>

using namespace rydgate;

namespace {

const char* kFig2 = R"(
[physics]
configuration = "doppler-free"
rabi_max = 3.0
detuning_start = 6.0
detuning_end = 0.0
gamma = 0.0037
separation = 5.0
nbar = 5

[pulse]
ramp_time = 1.0
)";

ErrorKind kind_of(const std::string& text)
{
    try {
        load_config(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidParameter;
}

std::string message_of(const std::string& text)
{
    try {
        load_config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to)
{
    text.replace(text.find(from), from.size(), to);
    return text;
}

} // namespace

TEST_CASE("caption parameter set loads with its values")
{
    const GateConfig c = load_config(kFig2);
    CHECK(c.configuration == Configuration::DopplerFree);
    CHECK(c.rabi_max == 3.0);
    CHECK(c.detuning_start == 6.0);
    CHECK(c.detuning_end == 0.0);
    CHECK(c.gamma == 0.0037);
    CHECK(c.separation == 5.0);
    CHECK(c.nbar == 5.0);
    CHECK(c.ramp_time == 1.0);
    CHECK_FALSE(c.hold_time.has_value());
}

TEST_CASE("documented defaults fill omitted keys")
{
    const GateConfig c = load_config(kFig2);
    CHECK(c.quadrature_nodes == 21);
    CHECK(c.vdd_exponent == 6);
    CHECK(c.integrator_tol == 1e-10);
    CHECK(c.c6 == 1.0e5);
    CHECK(c.trap_freq == 0.150);
    CHECK(c.wavelength == 319.0);
    CHECK(c.shape == RampShape::SmoothstepSin2);
}

TEST_CASE("invariant violations name the field")
{
    const std::string neg = replace(kFig2, "separation = 5.0", "separation = -5");
    CHECK(kind_of(neg) == ErrorKind::InvalidParameter);
    CHECK(message_of(neg).rfind("invalid-parameter: separation", 0) == 0);

    CHECK(kind_of(replace(kFig2, "gamma = 0.0037", "gamma = -1")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "rabi_max = 3.0", "rabi_max = -3")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "nbar = 5", "nbar = -1")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "ramp_time = 1.0", "ramp_time = 0")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(std::string(kFig2) + "[numerics]\nquadrature_nodes = 20\n") == ErrorKind::InvalidParameter);
    CHECK(kind_of(std::string(kFig2) + "[numerics]\nquadrature_nodes = 1\n") == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "nbar = 5", "nbar = 5\nvdd_exponent = 0")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "nbar = 5", "nbar = 5\ntrap_freq = 0")) == ErrorKind::InvalidParameter);
}

TEST_CASE("missing required keys are reported by name")
{
    const std::string text = replace(kFig2, "rabi_max = 3.0\n", "");
    CHECK(kind_of(text) == ErrorKind::MissingParameter);
    CHECK(message_of(text).find("rabi_max") != std::string::npos);
    CHECK(kind_of(replace(kFig2, "ramp_time = 1.0", "")) == ErrorKind::MissingParameter);
}

TEST_CASE("malformed input is rejected")
{
    CHECK(kind_of(replace(kFig2, "nbar = 5", "nbar = 5\nbogus = 1")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "nbar = 5", "nbar = 5\nnbar = 6")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(std::string(kFig2) + "[extras]\n") == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "nbar = 5", "nbar = five")) == ErrorKind::InvalidParameter);
    CHECK(kind_of(replace(kFig2, "\"doppler-free\"", "\"sideways\"")) == ErrorKind::InvalidParameter);
    CHECK_THROWS_AS(load_config_file("/nonexistent/rydgate.toml"), Error);
}

TEST_CASE("hold time accepts a number or auto")
{
    CHECK(load_config(replace(kFig2, "ramp_time = 1.0", "ramp_time = 1.0\nhold_time = 0.3")).hold_time == 0.3);
    CHECK_FALSE(load_config(replace(kFig2, "ramp_time = 1.0", "ramp_time = 1.0\nhold_time = \"auto\""))
                    .hold_time.has_value());
}

TEST_CASE("piecewise nodes parse and validate")
{
    const std::string ok = replace(kFig2, "ramp_time = 1.0",
                                   "ramp_time = 1.0\nshape = \"piecewise\"\n"
                                   "nodes = [[0, 0, 6], [0.5, 1.5, 3], [1.0, 3, 0]]");
    const GateConfig c = load_config(ok);
    REQUIRE(c.nodes.size() == 3);
    CHECK(c.nodes[1].rabi == 1.5);
    CHECK(kind_of(replace(kFig2, "ramp_time = 1.0", "ramp_time = 1.0\nshape = \"piecewise\"")) ==
          ErrorKind::MissingParameter);
    CHECK(kind_of(replace(kFig2, "ramp_time = 1.0",
                          "ramp_time = 1.0\nshape = \"piecewise\"\nnodes = [[0, 0, 6], [0.7, 1, 3], [0.5, 3, 0]]")) ==
          ErrorKind::InvalidParameter);
}

TEST_CASE("serialisation round-trips")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 200; ++i) {
        GateConfig c = load_config(kFig2);
        c.configuration = i % 2 ? Configuration::SingleLaser : Configuration::DopplerFree;
        c.rabi_max = u(rng);
        c.detuning_start = u(rng);
        c.detuning_end = -u(rng);
        c.gamma = u(rng) * 1e-3;
        c.separation = u(rng);
        c.nbar = u(rng);
        c.trap_freq = u(rng) / 10;
        c.ramp_time = u(rng);
        if (i % 3 == 0)
            c.hold_time = u(rng);
        if (i % 5 == 0)
            c.vdd_pm = -u(rng);
        c.quadrature_nodes = 3 + 2 * (i % 10);
        c.optimization.rabi_max = c.rabi_max;
        c.optimization.detuning_min = c.detuning_end;
        c.optimization.detuning_max = c.detuning_start;
        const GateConfig back = load_config(serialize_config(c));
        CHECK(back == c);
    }
}

TEST_CASE("derived quantities")
{
    const GateConfig c = load_config(kFig2);
    const DerivedParams d = derive(c);

    // ħk²/2m from SI constants, converted to rad/μs.
    const double k_si = 2.0 * M_PI / 319e-9;
    const double omega_rec = 1.054571817e-34 * k_si * k_si / (2.0 * 2.20694650e-25) * 1e-6;
    CHECK(d.omega_rec == doctest::Approx(omega_rec).epsilon(1e-12));
    CHECK(d.omega_rec / kTwoPi == doctest::Approx(0.01475).epsilon(1e-3));
    CHECK(d.doppler_per_hbar_k == 2.0 * d.omega_rec);
    CHECK(d.k_l == doctest::Approx(2.0 * M_PI / 0.319).epsilon(1e-14));

    CHECK(d.vdd_at_zbar / kTwoPi == doctest::Approx(-6.4).epsilon(1e-12));
    CHECK(d.vdd_gradient_at_zbar / kTwoPi == doctest::Approx(7.68).epsilon(1e-12));
    CHECK(d.vdd_gradient_at_zbar == doctest::Approx(-c.vdd_exponent * d.vdd_at_zbar / c.separation).epsilon(1e-14));
    CHECK(d.vdd_at_zbar * std::pow(c.separation, c.vdd_exponent) == doctest::Approx(-kTwoPi * c.c6).epsilon(1e-13));

    CHECK(d.eta * d.eta * d.omega_osc == doctest::Approx(d.omega_rec).epsilon(1e-13));
    CHECK(d.delta_p_th * d.delta_p_th ==
          doctest::Approx((c.nbar + 0.5) * d.omega_osc / d.doppler_per_hbar_k).epsilon(1e-13));
    CHECK(d.reduced_mass == doctest::Approx(c.atom_mass / 2).epsilon(1e-15));
}

TEST_CASE("per-pair potential overrides")
{
    GateConfig c = load_config(replace(kFig2, "nbar = 5", "nbar = 5\nvdd_pm = -3.2"));
    const DerivedParams d = derive(c);
    CHECK(d.vdd_pp / kTwoPi == doctest::Approx(-6.4));
    CHECK(d.vdd_pm / kTwoPi == doctest::Approx(-3.2));
    CHECK(d.vdd_mm / kTwoPi == doctest::Approx(-6.4));
    CHECK(d.grad_pm == doctest::Approx(-c.vdd_exponent * d.vdd_pm / c.separation));
}
