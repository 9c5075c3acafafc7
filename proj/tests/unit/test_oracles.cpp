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

#include "rydgate/oracles.hpp"

#include <cmath>
#include <map>

using namespace rydgate;

namespace {

GateConfig fig2()
{
    GateConfig g;
    g.rabi_max = 3;
    g.detuning_start = 6;
    g.gamma = 0.0037;
    g.separation = 5;
    g.nbar = 5;
    g.ramp_time = 1;
    return g;
}

std::map<std::string, OracleOutcome> by_name(const std::vector<OracleOutcome>& v)
{
    std::map<std::string, OracleOutcome> m;
    for (const OracleOutcome& o : v)
        m[o.name] = o;
    return m;
}

} // namespace

TEST_CASE("log-log slope of a power law")
{
    std::vector<double> x, y;
    for (int k = 0; k < 5; ++k) {
        x.push_back(0.1 * std::pow(10.0, k / 4.0));
        y.push_back(7.0 * std::pow(x.back(), 3.0));
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("oracles on the default configuration")
{
    const auto m = by_name(run_oracles(fig2(), 1));
    for (const char* name : {"light-shift-closed-form", "quadrature-vs-gaussian", "ensemble-normalised-symmetric",
                             "unitarity-without-decay", "decay-loss-bookkeeping", "calibrated-conditional-phase",
                             "perturbation-vs-diagonalisation", "doppler-free-first-order", "rho-hermitian-psd"}) {
        REQUIRE(m.count(name) == 1);
        const std::string label = name;
        CAPTURE(label);
        CHECK(m.at(name).passed);
    }
    REQUIRE(m.count("perturbation-vs-propagation") == 1);
    // Propagated phases carry a non-adiabatic term linear in the momentum.
    MESSAGE("propagated residual slope " << m.at("perturbation-vs-propagation").residual);
}

TEST_CASE("coarse quadrature fails the Gaussian oracle")
{
    GateConfig g = fig2();
    g.quadrature_nodes = 3;
    const auto m = by_name(run_oracles(g, 1));
    CHECK_FALSE(m.at("quadrature-vs-gaussian").passed);
}
