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

#include "rydgate/propagator.hpp"

#include "rydgate/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace rydgate {

namespace odeint = boost::numeric::odeint;
using cd = std::complex<double>;
using State = std::vector<cd>;

namespace {

// ψ occupies the first n slots; slot n carries (I₁, I₂) as (re, im), slot n+1 carries I_grad.
class Schrodinger {
public:
    Schrodinger(const HamiltonianFn& h, int n, const PropagationOptions& opt) : h_(h), n_(n), opt_(opt)
    {
        h_matrix_.resize(n, n);
    }

    void operator()(const State& x, State& dxdt, double t)
    {
        h_(t, h_matrix_);
        Eigen::Map<const Eigen::VectorXcd> psi(x.data(), n_);
        Eigen::Map<Eigen::VectorXcd> dpsi(dxdt.data(), n_);
        dpsi.noalias() = cd(0, -1) * (h_matrix_ * psi);

        double norm2 = psi.squaredNorm();
        double single = 0, dbl = 0, grad = 0;
        if (norm2 > 0) {
            for (int k = 0; k < n_; ++k) {
                double pk = std::norm(x[k]);
                if (!opt_.excitations.empty()) {
                    if (opt_.excitations[k] == 1)
                        single += pk;
                    else if (opt_.excitations[k] == 2)
                        dbl += pk;
                }
                if (!opt_.gradients.empty())
                    grad += pk * opt_.gradients[k];
            }
            single /= norm2;
            dbl /= norm2;
            grad /= norm2;
        }
        dxdt[n_] = cd(single, dbl);
        dxdt[n_ + 1] = cd(grad, 0.0);
    }

private:
    const HamiltonianFn& h_;
    int n_;
    const PropagationOptions& opt_;
    Eigen::MatrixXcd h_matrix_;
};

} // namespace

Trajectory propagate(const HamiltonianFn& hamiltonian_at, const Eigen::VectorXcd& psi0, double duration,
                     const PropagationOptions& options)
{
    const int n = static_cast<int>(psi0.size());
    Trajectory traj;

    State x(n + 2, cd(0, 0));
    for (int k = 0; k < n; ++k)
        x[k] = psi0[k];

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.emplace_back(Eigen::Map<const Eigen::VectorXcd>(x.data(), n));
    };

    // Stops: breakpoints, checkpoints and the end time, in increasing order.
    std::vector<std::pair<double, bool>> stops; // (time, is checkpoint)
    for (double b : options.breakpoints)
        if (b > 0 && b < duration)
            stops.emplace_back(b, false);
    if (options.checkpoints > 0) {
        record(0.0);
        for (int k = 1; k <= options.checkpoints; ++k)
            stops.emplace_back(duration * k / options.checkpoints, true);
    }
    stops.emplace_back(duration, false);
    std::stable_sort(stops.begin(), stops.end(), [](auto& a, auto& b) { return a.first < b.first; });

    Schrodinger system(hamiltonian_at, n, options);
    auto stepper = odeint::make_controlled(options.tol, options.tol, odeint::runge_kutta_dopri5<State>());

    double t = 0;
    double dt = std::min(1e-3, duration > 0 ? duration / 16 : 1e-3);
    const double dt_min = 1e-13 * std::max(duration, 1.0);
    State dxdt(n + 2);
    system(x, dxdt, t);

    for (const auto& [target, is_checkpoint] : stops) {
        while (target - t > 1e-13 * std::max(duration, 1.0)) {
            const double natural = dt;
            const bool clamped = t + dt > target;
            if (clamped)
                dt = target - t;
            odeint::controlled_step_result res;
            try {
                res = stepper.try_step(system, x, dxdt, t, dt);
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "integrator failed at t = " << t << " us: " << e.what();
                throw Error(ErrorKind::StiffFailure, os.str());
            }
            if (res == odeint::success) {
                if (!std::isfinite(std::abs(x[n])) ||
                    !Eigen::Map<const Eigen::VectorXcd>(x.data(), n).allFinite()) {
                    std::ostringstream os;
                    os << "non-finite state at t = " << t << " us";
                    throw Error(ErrorKind::StiffFailure, os.str());
                }
                ++traj.steps;
                if (clamped) {
                    t = target;
                    dt = std::max(dt, natural);
                }
            } else {
                ++traj.rejected_steps;
            }
            if (dt < dt_min) {
                std::ostringstream os;
                os << "step size underflow at t = " << t << " us";
                throw Error(ErrorKind::StiffFailure, os.str());
            }
        }
        t = target;
        if (is_checkpoint)
            record(t);
    }

    traj.final_state = Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    traj.final_norm2 = traj.final_state.squaredNorm();
    traj.single_excitation_integral = x[n].real();
    traj.double_excitation_integral = x[n].imag();
    traj.gradient_weighted_integral = x[n + 1].real();
    return traj;
}

} // namespace rydgate
