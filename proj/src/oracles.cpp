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

#include "rydgate/oracles.hpp"

#include "rydgate/dressing.hpp"
#include "rydgate/error.hpp"
#include "rydgate/gate.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace rydgate {

namespace {

using cd = std::complex<double>;

double wrap(double a) { return std::remainder(a, kTwoPi); }

OracleOutcome outcome(std::string name, double residual, double threshold, bool below, std::string detail = "")
{
    OracleOutcome o;
    o.name = std::move(name);
    o.residual = residual;
    o.threshold = threshold;
    o.passed = below ? residual <= threshold : residual >= threshold;
    o.detail = std::move(detail);
    return o;
}

double closed_form_residual()
{
    std::mt19937_64 rng(20260415);
    std::uniform_real_distribution<double> rabi(0.0, 60.0), detuning(-60.0, 60.0);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const double om = rabi(rng), de = detuning(rng);
        if (om == 0 && de == 0)
            continue;
        Eigen::Matrix2d h1, h2;
        h1 << 0, om / 2, om / 2, -de;
        h2 << 0, std::sqrt(2.0) * om / 2, std::sqrt(2.0) * om / 2, -de;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> e1(h1), e2(h2);
        // The ground branch is the upper level for Δ > 0 and the lower one for Δ < 0.
        const int k = de >= 0 ? 1 : 0;
        const double r1 = std::abs(light_shift_single(om, de) - e1.eigenvalues()(k));
        const double r2 = std::abs(light_shift_pair_blockaded(om, de) - e2.eigenvalues()(k));
        const double scale = std::max(std::abs(de), om);
        worst = std::max({worst, r1 / scale, r2 / scale});
    }
    return worst;
}

std::vector<double> small_momenta()
{
    std::vector<double> p;
    for (int k = 0; k <= 4; ++k)
        p.push_back(0.1 * std::pow(10.0, k / 4.0));
    return p;
}

} // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<OracleOutcome> run_oracles(const GateConfig& config, int jobs)
{
    std::vector<OracleOutcome> out;
    out.push_back(outcome("light-shift-closed-form", closed_form_residual(), 1e-10, true,
                          "max relative deviation over 10^4 random (rabi, detuning)"));

    const PulseSchedule schedule = config.hold_time ? PulseSchedule::from_config(config) : calibrate_hold(config, M_PI);
    const double total = schedule.total_time();
    const DerivedParams d = derive(config);

    {
        const ThermalEnsemble ens = ThermalEnsemble::from_config(config, config.quadrature_nodes);
        const double sigma_cm = std::sqrt(2.0) * ens.sigma;
        const double alpha_max = d.doppler_per_hbar_k * total;
        double worst = 0;
        for (int k = 0; k <= 64; ++k) {
            const double alpha = alpha_max * k / 64;
            cd avg = 0;
            for (std::size_t i = 0; i < ens.nodes.size(); ++i)
                for (std::size_t j = 0; j < ens.nodes.size(); ++j)
                    avg += ens.weights[i] * ens.weights[j] * std::exp(cd(0, -alpha * (ens.nodes[i] + ens.nodes[j])));
            worst = std::max(worst, std::abs(avg - std::exp(-0.5 * alpha * alpha * sigma_cm * sigma_cm)));
        }
        std::ostringstream os;
        os << config.quadrature_nodes << " nodes, alpha*sigma_P up to " << alpha_max * sigma_cm;
        out.push_back(outcome("quadrature-vs-gaussian", worst, 1e-6, true, os.str()));

        double wsum = 0, asym = 0;
        for (std::size_t i = 0; i < ens.nodes.size(); ++i) {
            wsum += ens.weights[i];
            const std::size_t j = ens.nodes.size() - 1 - i;
            asym = std::max({asym, std::abs(ens.nodes[i] + ens.nodes[j]), std::abs(ens.weights[i] - ens.weights[j])});
        }
        out.push_back(outcome("ensemble-normalised-symmetric", std::max(std::abs(wsum - 1.0), asym), 1e-12, true));
    }

    {
        GateConfig lossless = config;
        lossless.gamma = 0;
        const GateEvaluator ev(lossless, schedule, Mechanisms{false, true, true});
        const double p = std::max(d.delta_p_th, 1.0);
        double worst = 0;
        for (auto [pc, pr] : {std::pair{0.0, 0.0}, std::pair{p, 0.5 * p}, std::pair{-p, 0.25 * p}})
            worst = std::max(worst, std::abs(ev.pair_trajectory(pc, pr).final_norm2 - 1.0));
        out.push_back(outcome("unitarity-without-decay", worst, 100.0 * config.integrator_tol * total, true));
    }

    {
        const GateEvaluator ev(config, schedule);
        const Trajectory t = ev.pair_trajectory(0, 0);
        const double lost = 1.0 - t.final_norm2;
        const double predicted = 1.0 - std::exp(-t.decay_exponent(d.gamma));
        const double rel = predicted > 0 ? std::abs(lost - predicted) / predicted : std::abs(lost);
        out.push_back(outcome("decay-loss-bookkeeping", rel, 1e-3, true, "1-|psi|^2 against 1-exp(-gamma T)"));
    }

    {
        const PhaseRecord ph = measure_phases(config, schedule);
        out.push_back(outcome("calibrated-conditional-phase", std::abs(wrap(ph.conditional_phase - M_PI)), 1e-4, true));
    }

    {
        GateConfig sl = config;
        sl.configuration = Configuration::SingleLaser;
        sl.gamma = 0;
        const GateEvaluator ev(sl, schedule, Mechanisms{false, true, true});
        const cd a0 = ev.pair_trajectory(0, 0).final_state(0);
        const std::vector<double> ps = small_momenta();
        std::vector<double> res_prop, res_diag;
        for (double p : ps) {
            const double pert = doppler_phase(schedule, sl, p, 0);
            const double prop = -std::arg(ev.pair_trajectory(p, 0).final_state(0) / a0);
            res_prop.push_back(std::abs(prop - pert));
            res_diag.push_back(std::abs(adiabatic_doppler_phase(schedule, sl, p, 0) - pert));
        }
        out.push_back(outcome("perturbation-vs-propagation", loglog_slope(ps, res_prop), 2.5, false,
                              "log-log slope of the single-laser residual for P in [0.1, 1] hbar k"));
        out.push_back(outcome("perturbation-vs-diagonalisation", loglog_slope(ps, res_diag), 2.5, false,
                              "log-log slope of the single-laser residual for P in [0.1, 1] hbar k"));
    }

    {
        auto slope = [&](Configuration c) {
            GateConfig g = config;
            g.configuration = c;
            g.gamma = 0;
            const GateEvaluator ev(g, schedule, Mechanisms{false, true, true});
            const double h = 0.01;
            const cd plus = ev.pair_trajectory(h, 0).final_state(0);
            const cd minus = ev.pair_trajectory(-h, 0).final_state(0);
            return std::abs(std::arg(plus / minus)) / (2.0 * h);
        };
        const double sl = slope(Configuration::SingleLaser);
        const double df = slope(Configuration::DopplerFree);
        out.push_back(outcome("doppler-free-first-order", sl > 0 ? df / sl : df, 1e-3, true,
                              "|dphi/dP| doppler-free over single-laser"));
    }

    {
        GateOptions o;
        o.jobs = jobs;
        o.check_convergence = false;
        const GateResult r = assemble_rho(config, schedule, o);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (r.rho + r.rho.adjoint()));
        const double herm = (r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff();
        out.push_back(outcome("rho-hermitian-psd", std::max(herm, -es.eigenvalues().minCoeff()), 1e-9, true));
    }
    return out;
}

} // namespace rydgate
