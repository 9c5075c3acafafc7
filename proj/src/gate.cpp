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

#include "rydgate/gate.hpp"

#include "rydgate/error.hpp"
#include "rydgate/parallel.hpp"

#include <cmath>
#include <sstream>

namespace rydgate {

using cd = std::complex<double>;

namespace {

const std::array<double, 4> kTargetSigns = {-1.0, 1.0, 1.0, 1.0};

double wrap(double a) { return std::remainder(a, kTwoPi); }

} // namespace

ThermalEnsemble ThermalEnsemble::gauss_hermite(double sigma, int count)
{
    ThermalEnsemble e;
    e.sigma = sigma;
    if (sigma == 0 || count <= 1) {
        e.nodes = {0.0};
        e.weights = {1.0};
        return e;
    }
    // Jacobi matrix of the probabilists' Hermite recurrence x He_n = He_{n+1} + n He_{n-1}.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(count, count);
    for (int k = 1; k < count; ++k)
        jac(k - 1, k) = jac(k, k - 1) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<double> x(count), w(count);
    for (int i = 0; i < count; ++i) {
        x[i] = es.eigenvalues()(i);
        w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
    e.nodes.resize(count);
    e.weights.resize(count);
    double total = 0;
    for (int i = 0; i < count; ++i) {
        const int j = count - 1 - i;
        e.nodes[i] = 0.5 * (x[i] - x[j]) * sigma;
        e.weights[i] = 0.5 * (w[i] + w[j]);
        total += e.weights[i];
    }
    if (count % 2 == 1)
        e.nodes[count / 2] = 0.0;
    for (double& wi : e.weights)
        wi /= total;
    return e;
}

ThermalEnsemble ThermalEnsemble::from_config(const GateConfig& config, int count)
{
    const DerivedParams d = derive(config);
    ThermalEnsemble e = gauss_hermite(d.delta_p_th, count);
    e.nbar = config.nbar;
    e.omega_osc = d.omega_osc;
    return e;
}

double GateResult::conditional_phase() const
{
    return wrap(phases[0] - phases[1] - phases[2] + phases[3]);
}

GateEvaluator::GateEvaluator(const GateConfig& config, const PulseSchedule& schedule, Mechanisms mechanisms)
    : config_(config), schedule_(schedule), mechanisms_(mechanisms), model_([&] {
          ModelParams p = ModelParams::from(config);
          if (!mechanisms.decay)
              p.gamma = 0;
          return p;
      }())
{
    schedule_.prepare();
    phi_cal_ = -std::arg(atom_trajectory(0.0).final_state(0));
}

Trajectory GateEvaluator::pair_trajectory(double p_cm, double p_rel, int checkpoints) const
{
    PropagationOptions opt;
    opt.tol = config_.integrator_tol;
    opt.checkpoints = checkpoints;
    opt.breakpoints = schedule_.breakpoints();
    opt.excitations = model_.pair_basis().excitations;
    opt.gradients = model_.pair_gradients();
    auto h = [&](double t, Eigen::MatrixXcd& m) {
        const PulseSample s = evaluate(schedule_, t);
        model_.two_atom(s.rabi, s.detuning, p_cm, p_rel, m);
    };
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(model_.pair_basis().size());
    psi0(0) = 1.0;
    return propagate(h, psi0, schedule_.total_time(), opt);
}

Trajectory GateEvaluator::atom_trajectory(double p, int checkpoints) const
{
    PropagationOptions opt;
    opt.tol = config_.integrator_tol;
    opt.checkpoints = checkpoints;
    opt.breakpoints = schedule_.breakpoints();
    opt.excitations = model_.atom_basis().excitations;
    auto h = [&](double t, Eigen::MatrixXcd& m) {
        const PulseSample s = evaluate(schedule_, t);
        model_.single_atom(s.rabi, s.detuning, p, m);
    };
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(model_.atom_basis().size());
    psi0(0) = 1.0;
    return propagate(h, psi0, schedule_.total_time(), opt);
}

cd GateEvaluator::run_branch(Logical state, double p_a, double p_b) const
{
    switch (state) {
    case Logical::L11:
        return 1.0;
    case Logical::L01:
        return atom_trajectory(p_a).final_state(0) * std::polar(1.0, phi_cal_);
    case Logical::L10:
        return atom_trajectory(p_b).final_state(0) * std::polar(1.0, phi_cal_);
    case Logical::L00:
        break;
    }
    return pair_trajectory(p_a + p_b, 0.5 * (p_b - p_a)).final_state(0) * std::polar(1.0, 2.0 * phi_cal_);
}

double fidelity_of(const Eigen::Matrix4cd& rho)
{
    CompensatedSum<double> f;
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            f.add(kTargetSigns[u] * kTargetSigns[v] * rho(u, v).real());
    return 0.25 * f.value();
}

GateResult GateEvaluator::assemble(int nodes, int jobs) const
{
    const DerivedParams d = derive(config_);
    ThermalEnsemble ens = mechanisms_.motion ? ThermalEnsemble::from_config(config_, nodes)
                                             : ThermalEnsemble::gauss_hermite(0.0, 1);
    const std::size_t n = ens.nodes.size();

    std::vector<cd> atom(n);
    parallel_for(n, jobs, [&](std::size_t i) { atom[i] = run_branch(Logical::L01, ens.nodes[i], 0.0); });

    // a00 is symmetric under exchanging the atoms, so only i <= j is propagated.
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            tasks.emplace_back(i, j);
    std::vector<cd> pair_amp(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t k) {
        pair_amp[k] = run_branch(Logical::L00, ens.nodes[tasks[k].first], ens.nodes[tasks[k].second]);
    });
    Eigen::MatrixXcd a00(n, n);
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        a00(tasks[k].first, tasks[k].second) = pair_amp[k];
        a00(tasks[k].second, tasks[k].first) = pair_amp[k];
    }

    std::array<std::array<CompensatedSum<cd>, 4>, 4> acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = ens.weights[i] * ens.weights[j];
            const std::array<cd, 4> a = {a00(i, j), atom[i], atom[j], cd(1.0)};
            for (int u = 0; u < 4; ++u)
                for (int v = u; v < 4; ++v)
                    acc[u][v].add(w * a[u] * std::conj(a[v]));
        }
    }

    GateResult r;
    r.configuration = config_.configuration;
    for (int u = 0; u < 4; ++u) {
        r.rho_no_force(u, u) = 0.25 * acc[u][u].value().real();
        for (int v = u + 1; v < 4; ++v) {
            r.rho_no_force(u, v) = 0.25 * acc[u][v].value();
            r.rho_no_force(v, u) = std::conj(r.rho_no_force(u, v));
        }
    }

    const Trajectory zero = pair_trajectory(0.0, 0.0);
    r.delta_p_rel = zero.gradient_weighted_integral / d.k_l;
    r.decay_exponent = zero.decay_exponent(model_.params().gamma);
    r.excitation_time = zero.single_excitation_integral + 2.0 * zero.double_excitation_integral;
    const cd a00_zero = zero.final_state(0) * std::polar(1.0, 2.0 * phi_cal_);
    r.ground_return = std::norm(a00_zero);
    if (mechanisms_.dipole_force)
        r.force_factor =
            std::exp(-(config_.nbar + 0.5) * r.delta_p_rel * r.delta_p_rel * 2.0 * d.omega_rec / d.omega_osc);

    r.rho = r.rho_no_force;
    for (int v = 1; v < 4; ++v) {
        r.rho(0, v) *= r.force_factor;
        r.rho(v, 0) *= r.force_factor;
    }
    r.fidelity = fidelity_of(r.rho);
    r.fidelity_no_force = fidelity_of(r.rho_no_force);
    r.loss = 1.0 - r.rho.trace().real();

    const cd a01_zero = run_branch(Logical::L01, 0.0, 0.0);
    r.phases = {std::arg(a00_zero), std::arg(a01_zero), std::arg(a01_zero), 0.0};
    r.calibration_phase = phi_cal_;
    r.gate_time = schedule_.total_time();
    r.ramp_time = schedule_.ramp_time;
    r.peak_time = schedule_.peak_time;
    r.hold_time = schedule_.hold_time;
    r.quadrature_nodes = static_cast<int>(n);
    return r;
}

cd run_branch(const GateConfig& config, const PulseSchedule& schedule, Logical state, double p_a, double p_b)
{
    return GateEvaluator(config, schedule).run_branch(state, p_a, p_b);
}

GateResult assemble_rho(const GateConfig& config, const PulseSchedule& schedule, const GateOptions& options)
{
    const GateEvaluator ev(config, schedule, options.mechanisms);
    const int nodes = options.nodes > 0 ? options.nodes : config.quadrature_nodes;
    GateResult r = ev.assemble(nodes, options.jobs);
    if (options.check_convergence && options.mechanisms.motion) {
        const GateResult fine = ev.assemble(2 * nodes - 1, options.jobs);
        r.convergence_delta = std::abs(fine.fidelity - r.fidelity);
        if (r.convergence_delta > options.convergence_tol) {
            std::ostringstream os;
            os << "fidelity moved by " << r.convergence_delta << " between " << nodes << " and " << 2 * nodes - 1
               << " nodes per axis";
            throw Error(ErrorKind::QuadratureUnconverged, os.str());
        }
    }
    return r;
}

ErrorBudget error_budget(const GateConfig& config, const PulseSchedule& schedule, const GateOptions& options,
                         GateResult* full_out)
{
    GateOptions o = options;
    o.mechanisms = {false, false, false};
    const double e_frozen = assemble_rho(config, schedule, o).error();
    o.mechanisms.decay = true;
    const double e_decay = assemble_rho(config, schedule, o).error();
    o.mechanisms.motion = true;
    o.mechanisms.dipole_force = true;
    const GateResult full = assemble_rho(config, schedule, o);

    ErrorBudget b;
    b.diabatic = e_frozen;
    b.decay = e_decay - e_frozen;
    b.doppler = (1.0 - full.fidelity_no_force) - e_decay;
    b.dipole_force = full.fidelity_no_force - full.fidelity;
    b.total = full.error();
    b.cross = b.total - (b.diabatic + b.decay + b.doppler + b.dipole_force);
    if (full_out)
        *full_out = full;
    return b;
}

ScanResult scan_ramp(const GateConfig& config, const std::vector<double>& ramp_times, const GateOptions& options)
{
    ScanResult out;
    for (double tr : ramp_times) {
        try {
            GateConfig cfg = config;
            cfg.ramp_time = tr;
            cfg.hold_time.reset();
            validate(cfg);
            const PulseSchedule s = calibrate_hold(cfg, M_PI);

            GateOptions o = options;
            ScanRow row;
            row.ramp_time = tr;
            row.gate_time = s.total_time();

            o.mechanisms = {true, false, false};
            row.err_nomotion = assemble_rho(cfg, s, o).error();

            o.mechanisms = {true, true, true};
            cfg.configuration = Configuration::SingleLaser;
            row.err_single = assemble_rho(cfg, s, o).error();

            cfg.configuration = Configuration::DopplerFree;
            const GateResult df = assemble_rho(cfg, s, o);
            row.err_dopplerfree = df.error();
            row.err_no_dipole_force = 1.0 - df.fidelity_no_force;
            out.rows.push_back(row);
        } catch (const Error& e) {
            out.failures.push_back({tr, e.what()});
        }
    }
    return out;
}

} // namespace rydgate
