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

#include "rydgate/pulse.hpp"

#include "rydgate/dressing.hpp"
#include "rydgate/error.hpp"
#include "rydgate/model.hpp"
#include "rydgate/propagator.hpp"

#include <cmath>

// pchip.hpp in Boost 1.74 calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

namespace rydgate {

using cd = std::complex<double>;
using boost::math::interpolators::pchip;

struct PulseSchedule::Interpolant {
    std::vector<double> x, rabi, detuning;
    std::optional<pchip<std::vector<double>>> rabi_curve, detuning_curve;

    PulseSample at(double f) const
    {
        if (rabi_curve)
            return {(*rabi_curve)(f), (*detuning_curve)(f)};
        auto it = std::upper_bound(x.begin(), x.end(), f);
        std::size_t i = std::clamp<std::size_t>(it - x.begin(), 1, x.size() - 1);
        double w = (f - x[i - 1]) / (x[i] - x[i - 1]);
        return {rabi[i - 1] + w * (rabi[i] - rabi[i - 1]), detuning[i - 1] + w * (detuning[i] - detuning[i - 1])};
    }

    PulseSample slope(double f) const
    {
        if (rabi_curve)
            return {rabi_curve->prime(f), detuning_curve->prime(f)};
        auto it = std::upper_bound(x.begin(), x.end(), f);
        std::size_t i = std::clamp<std::size_t>(it - x.begin(), 1, x.size() - 1);
        double dx = x[i] - x[i - 1];
        return {(rabi[i] - rabi[i - 1]) / dx, (detuning[i] - detuning[i - 1]) / dx};
    }
};

namespace {

double wrap(double a) { return std::remainder(a, kTwoPi); }

[[noreturn]] void out_of_schedule(double t, double total)
{
    std::ostringstream os;
    os << "t = " << t << " us outside [0, " << total << "]";
    throw Error(ErrorKind::OutOfSchedule, os.str());
}

} // namespace

void PulseSchedule::prepare()
{
    if (shape != RampShape::PiecewiseNodes) {
        interp_.reset();
        return;
    }
    auto in = std::make_shared<Interpolant>();
    in->x.push_back(0.0);
    in->rabi.push_back(0.0);
    in->detuning.push_back(detuning_start);
    for (const ControlPoint& c : nodes) {
        if (!(c.time > in->x.back() && c.time < 1.0))
            throw Error(ErrorKind::InvalidParameter,
                        "nodes (times must increase strictly inside the ramp, got fraction " +
                            std::to_string(c.time) + ")");
        in->x.push_back(c.time);
        in->rabi.push_back(c.rabi);
        in->detuning.push_back(c.detuning);
    }
    in->x.push_back(1.0);
    in->rabi.push_back(rabi_max);
    in->detuning.push_back(detuning_end);
    if (in->x.size() >= 4) {
        // Flat ends make the ramp continuously differentiable into the hold.
        auto x1 = in->x, x2 = in->x, r = in->rabi, d = in->detuning;
        in->rabi_curve.emplace(std::move(x1), std::move(r), 0.0, 0.0);
        in->detuning_curve.emplace(std::move(x2), std::move(d), 0.0, 0.0);
    }
    interp_ = std::move(in);
}

PulseSample PulseSchedule::ramp(double tau) const
{
    const double f = std::clamp(tau / ramp_time, 0.0, 1.0);
    if (shape == RampShape::PiecewiseNodes) {
        if (!interp_) {
            PulseSchedule copy = *this;
            copy.prepare();
            return copy.ramp(tau);
        }
        return interp_->at(f);
    }
    double s = f;
    if (shape == RampShape::SmoothstepSin2) {
        double q = std::sin(0.5 * M_PI * f);
        s = q * q;
    }
    return {rabi_max * s, detuning_start + (detuning_end - detuning_start) * s};
}

PulseSample PulseSchedule::ramp_rate(double tau) const
{
    const double f = std::clamp(tau / ramp_time, 0.0, 1.0);
    if (shape == RampShape::PiecewiseNodes) {
        if (!interp_) {
            PulseSchedule copy = *this;
            copy.prepare();
            return copy.ramp_rate(tau);
        }
        PulseSample d = interp_->slope(f);
        return {d.rabi / ramp_time, d.detuning / ramp_time};
    }
    double ds = 1.0 / ramp_time;
    if (shape == RampShape::SmoothstepSin2)
        ds = 0.5 * M_PI / ramp_time * std::sin(M_PI * f);
    return {rabi_max * ds, (detuning_end - detuning_start) * ds};
}

std::vector<double> PulseSchedule::breakpoints() const
{
    const double total = total_time();
    std::vector<double> b;
    auto add = [&](double t) {
        if (t > 0 && t < total)
            b.push_back(t);
    };
    add(peak_time);
    add(peak_time + hold_time);
    if (shape == RampShape::PiecewiseNodes && !(interp_ && interp_->rabi_curve)) {
        for (const ControlPoint& c : nodes) {
            double tau = c.time * ramp_time;
            if (tau < peak_time) {
                add(tau);
                add(total - tau);
            }
        }
    }
    std::sort(b.begin(), b.end());
    return b;
}

PulseSchedule PulseSchedule::from_config(const GateConfig& config)
{
    const DerivedParams d = derive(config);
    PulseSchedule s;
    s.ramp_time = config.ramp_time;
    s.peak_time = config.ramp_time;
    s.hold_time = config.hold_time.value_or(0.0);
    s.rabi_max = d.rabi_max;
    s.detuning_start = d.detuning_start;
    s.detuning_end = d.detuning_end;
    s.shape = config.shape;
    if (config.shape == RampShape::PiecewiseNodes && config.nodes.size() >= 2) {
        // Config nodes include both ends of the ramp; the end values replace the sweep limits.
        const ControlPoint& first = config.nodes.front();
        const ControlPoint& last = config.nodes.back();
        s.detuning_start = kTwoPi * first.detuning;
        s.rabi_max = kTwoPi * last.rabi;
        s.detuning_end = kTwoPi * last.detuning;
        for (std::size_t i = 1; i + 1 < config.nodes.size(); ++i) {
            const ControlPoint& c = config.nodes[i];
            s.nodes.push_back({c.time / config.ramp_time, kTwoPi * c.rabi, kTwoPi * c.detuning});
        }
    }
    s.prepare();
    return s;
}

PulseSample evaluate(const PulseSchedule& s, double t)
{
    const double total = s.total_time();
    const double slack = 1e-12 * std::max(total, 1.0);
    if (!(t >= -slack && t <= total + slack))
        out_of_schedule(t, total);
    t = std::clamp(t, 0.0, total);
    if (t <= s.peak_time)
        return s.ramp(t);
    if (t <= s.peak_time + s.hold_time)
        return s.ramp(s.peak_time);
    return s.ramp(total - t);
}

PulseSample rates(const PulseSchedule& s, double t)
{
    const double total = s.total_time();
    const double slack = 1e-12 * std::max(total, 1.0);
    if (!(t >= -slack && t <= total + slack))
        out_of_schedule(t, total);
    t = std::clamp(t, 0.0, total);
    if (t < s.peak_time)
        return s.ramp_rate(t);
    if (t <= s.peak_time + s.hold_time)
        return {0.0, 0.0};
    PulseSample r = s.ramp_rate(total - t);
    return {-r.rabi, -r.detuning};
}

double adiabaticity_margin(const PulseSchedule& s, const GateConfig& config, int samples)
{
    const double vdd = derive(config).vdd_pp;
    const double c = std::sqrt(2.0) / 2.0;
    Eigen::Matrix3d d_rabi, d_detuning;
    d_rabi << 0, c, 0, c, 0, c, 0, c, 0;
    d_detuning << 0, 0, 0, 0, -1, 0, 0, 0, -2;

    const double total = s.total_time();
    double margin = 0;
    for (int k = 0; k <= samples; ++k) {
        const double t = total * k / samples;
        const PulseSample p = evaluate(s, t);
        const PulseSample r = rates(s, t);
        DressedSpectrum d;
        try {
            d = dressed_spectrum(p.rabi, p.detuning, vdd);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "gap closes at t = " << t << " us (" << e.detail() << ")";
            throw Error(ErrorKind::GapClosure, os.str());
        }
        const Eigen::Matrix3d dh = r.rabi * d_rabi + r.detuning * d_detuning;
        const Eigen::Vector3d g = d.vectors.col(d.ground);
        for (int e = 0; e < 3; ++e) {
            if (e == d.ground)
                continue;
            const double gap = d.energies(e) - d.ground_energy;
            margin = std::max(margin, std::abs(d.vectors.col(e).dot(dh * g)) / (gap * gap));
        }
    }
    return margin;
}

namespace {

struct FrozenModels {
    HamiltonianModel model;
    explicit FrozenModels(const GateConfig& config)
        : model([&] {
              ModelParams p = ModelParams::from(config);
              p.gamma = 0;
              return p;
          }())
    {
    }
};

Eigen::VectorXcd unit(int n)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(0) = 1.0;
    return v;
}

} // namespace

PhaseRecord measure_phases(const GateConfig& config, const PulseSchedule& schedule)
{
    const FrozenModels fm(config);
    const HamiltonianModel& m = fm.model;
    PropagationOptions opt;
    opt.tol = config.integrator_tol;
    opt.breakpoints = schedule.breakpoints();

    auto pair_h = [&](double t, Eigen::MatrixXcd& h) {
        const PulseSample p = evaluate(schedule, t);
        m.two_atom(p.rabi, p.detuning, 0, 0, h);
    };
    auto atom_h = [&](double t, Eigen::MatrixXcd& h) {
        const PulseSample p = evaluate(schedule, t);
        m.single_atom(p.rabi, p.detuning, 0, h);
    };
    const double total = schedule.total_time();
    const Trajectory pair = propagate(pair_h, unit(m.pair_basis().size()), total, opt);
    const Trajectory atom = propagate(atom_h, unit(m.atom_basis().size()), total, opt);

    PhaseRecord r;
    r.a00 = pair.final_state(0);
    r.a01 = atom.final_state(0);
    r.conditional_phase = wrap(std::arg(r.a00) - 2.0 * std::arg(r.a01));
    r.ground_return = std::norm(r.a00);
    return r;
}

PulseSchedule calibrate_hold(const GateConfig& config, double target_phase)
{
    return calibrate_hold(config, PulseSchedule::from_config(config), target_phase);
}

// At zero momentum and Γ = 0 the Hamiltonian is real symmetric, so the mirrored ramp-down
// propagator is the transpose of the ramp-up one and a00 = ψᵀ exp(-iH_peak t_h) ψ with ψ the
// ramp-up state. One ramp-up propagation therefore prices every hold time and truncation point.
PulseSchedule calibrate_hold(const GateConfig& config, const PulseSchedule& seed, double target_phase)
{
    const double tol = 1e-4;
    PulseSchedule s = seed;
    s.peak_time = s.ramp_time;
    s.hold_time = 0;
    s.prepare();

    const FrozenModels fm(config);
    const HamiltonianModel& m = fm.model;
    auto pair_h = [&](double t, Eigen::MatrixXcd& h) {
        const PulseSample p = s.ramp(t);
        m.two_atom(p.rabi, p.detuning, 0, 0, h);
    };
    auto atom_h = [&](double t, Eigen::MatrixXcd& h) {
        const PulseSample p = s.ramp(t);
        m.single_atom(p.rabi, p.detuning, 0, h);
    };
    PropagationOptions opt;
    opt.tol = config.integrator_tol;
    opt.checkpoints = std::max(config.checkpoints, 200);
    const Eigen::VectorXcd pair0 = unit(m.pair_basis().size());
    const Eigen::VectorXcd atom0 = unit(m.atom_basis().size());
    const Trajectory up_pair = propagate(pair_h, pair0, s.ramp_time, opt);
    const Trajectory up_atom = propagate(atom_h, atom0, s.ramp_time, opt);

    auto phase_of = [](const Eigen::VectorXcd& pair, const Eigen::VectorXcd& atom) {
        const cd a00 = pair.transpose() * pair;
        const cd a01 = atom.transpose() * atom;
        return std::arg(a00) - 2.0 * std::arg(a01);
    };

    // Unwrapped phase along the truncation point.
    const std::size_t kn = up_pair.states.size();
    std::vector<double> ramp_phase(kn, 0.0);
    for (std::size_t k = 1; k < kn; ++k) {
        const double raw = phase_of(up_pair.states[k], up_atom.states[k]);
        ramp_phase[k] = ramp_phase[k - 1] + wrap(raw - ramp_phase[k - 1]);
    }
    const double full_ramp = ramp_phase.back();
    if (std::abs(full_ramp - target_phase) <= tol)
        return s;

    boost::math::tools::eps_tolerance<double> root_tol(45);
    for (std::size_t k = 1; k < kn; ++k) {
        const double lo = ramp_phase[k - 1] - target_phase;
        const double hi = ramp_phase[k] - target_phase;
        if (!(lo * hi < 0 || (hi == 0 && lo != 0)))
            continue;
        const double t0 = up_pair.times[k - 1];
        const double t1 = up_pair.times[k];
        const Eigen::VectorXcd p0 = up_pair.states[k - 1];
        const Eigen::VectorXcd q0 = up_atom.states[k - 1];
        auto f = [&](double tp) {
            if (tp <= t0)
                return lo;
            if (tp >= t1)
                return hi;
            PropagationOptions o;
            o.tol = config.integrator_tol;
            auto ph = [&](double t, Eigen::MatrixXcd& h) { pair_h(t0 + t, h); };
            auto ah = [&](double t, Eigen::MatrixXcd& h) { atom_h(t0 + t, h); };
            const Trajectory a = propagate(ph, p0, tp - t0, o);
            const Trajectory b = propagate(ah, q0, tp - t0, o);
            return ramp_phase[k - 1] + wrap(phase_of(a.final_state, b.final_state) - ramp_phase[k - 1]) - target_phase;
        };
        std::uintmax_t iters = 80;
        auto [a, b] = boost::math::tools::toms748_solve(f, t0, t1, lo, hi, root_tol, iters);
        s.peak_time = 0.5 * (a + b);
        s.hold_time = 0;
        return s;
    }

    // Hold regime: closed form in the eigenbasis of the peak Hamiltonian.
    const PulseSample peak = s.ramp(s.ramp_time);
    Eigen::MatrixXcd hp, ha;
    m.two_atom(peak.rabi, peak.detuning, 0, 0, hp);
    m.single_atom(peak.rabi, peak.detuning, 0, ha);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(hp.real()), ea(ha.real());
    const Eigen::VectorXcd wp = ep.eigenvectors().transpose() * up_pair.final_state;
    const Eigen::VectorXcd wa = ea.eigenvectors().transpose() * up_atom.final_state;
    auto amplitude = [](const Eigen::VectorXcd& w, const Eigen::VectorXd& e, double t) {
        cd sum = 0;
        for (int i = 0; i < w.size(); ++i)
            sum += w(i) * w(i) * std::exp(cd(0, -e(i) * t));
        return sum;
    };
    auto hold_phase = [&](double t) {
        return std::arg(amplitude(wp, ep.eigenvalues(), t)) - 2.0 * std::arg(amplitude(wa, ea.eigenvalues(), t));
    };

    double spread = 1e-9;
    for (const Eigen::VectorXd* e : {&ep.eigenvalues(), &ea.eigenvalues()})
        spread = std::max(spread, e->maxCoeff() - e->minCoeff());
    const double max_hold = config.max_hold_time;
    const int steps = std::max(64, static_cast<int>(std::ceil(max_hold * spread / 0.25)));
    double prev_t = 0, prev = full_ramp, best = full_ramp;
    for (int i = 1; i <= steps; ++i) {
        const double t = max_hold * i / steps;
        const double cur = prev + wrap(hold_phase(t) - prev);
        best = std::max(best, cur);
        const double lo = prev - target_phase;
        const double hi = cur - target_phase;
        if (lo * hi < 0 || hi == 0) {
            const double base = prev;
            auto f = [&](double th) {
                if (th <= prev_t)
                    return lo;
                if (th >= t)
                    return hi;
                return base + wrap(hold_phase(th) - base) - target_phase;
            };
            std::uintmax_t iters = 80;
            auto [a, b] = boost::math::tools::toms748_solve(f, prev_t, t, lo, hi, root_tol, iters);
            s.hold_time = 0.5 * (a + b);
            return s;
        }
        prev_t = t;
        prev = cur;
    }
    std::ostringstream os;
    os << "largest conditional phase " << best << " rad within max_hold_time " << max_hold << " us, target "
       << target_phase << " rad";
    throw Error(ErrorKind::PhaseUnreachable, os.str());
}

} // namespace rydgate
