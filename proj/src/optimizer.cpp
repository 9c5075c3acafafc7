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

#include "rydgate/optimizer.hpp"

#include "rydgate/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace rydgate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bounds {
    std::vector<double> lo, hi;

    void clamp(std::vector<double>& x) const
    {
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = std::clamp(x[i], lo[i], hi[i]);
    }
};

class Search {
public:
    Search(const OptimizationProblem& problem, const GateConfig& config) : problem_(problem), config_(config)
    {
        const OptimizationSettings& s = problem.settings;
        n_ = s.node_count;
        shape_ = problem.seed;
        shape_.rabi_max = std::min(shape_.rabi_max, kTwoPi * s.rabi_max);
        shape_.peak_time = shape_.ramp_time;
        shape_.hold_time = 0;

        for (int i = 0; i < n_; ++i) {
            bounds_.lo.push_back(s.rabi_min);
            bounds_.hi.push_back(s.rabi_max);
        }
        for (int i = 0; i < n_; ++i) {
            bounds_.lo.push_back(s.detuning_min);
            bounds_.hi.push_back(s.detuning_max);
        }
        if (s.objective == Objective::MinTime) {
            bounds_.lo.push_back(0.1);
            bounds_.hi.push_back(std::max(5.0, 2.0 * problem.seed.ramp_time));
        }
    }

    std::vector<double> seed_point() const
    {
        std::vector<double> x(2 * n_);
        for (int i = 0; i < n_; ++i) {
            const double f = static_cast<double>(i + 1) / (n_ + 1);
            const PulseSample p = problem_.seed.ramp(f * problem_.seed.ramp_time);
            x[i] = p.rabi / kTwoPi;
            x[n_ + i] = p.detuning / kTwoPi;
        }
        if (problem_.settings.objective == Objective::MinTime)
            x.push_back(problem_.seed.ramp_time);
        bounds_.clamp(x);
        return x;
    }

    PulseSchedule schedule_for(const std::vector<double>& x) const
    {
        PulseSchedule s = shape_;
        s.shape = RampShape::PiecewiseNodes;
        s.nodes.clear();
        for (int i = 0; i < n_; ++i) {
            const double f = static_cast<double>(i + 1) / (n_ + 1);
            s.nodes.push_back({f, kTwoPi * x[i], kTwoPi * x[n_ + i]});
        }
        if (problem_.settings.objective == Objective::MinTime) {
            s.ramp_time = x.back();
            s.peak_time = s.ramp_time;
        }
        s.prepare();
        if (problem_.settings.objective == Objective::MinError)
            return calibrate_total_time(config_, s, problem_.settings.total_time);
        return calibrate_hold(config_, s, M_PI);
    }

    EvaluationRecord evaluate(std::vector<double> x)
    {
        bounds_.clamp(x);
        EvaluationRecord rec;
        rec.iteration = static_cast<int>(log_.size());
        rec.parameters = x;
        rec.objective = kInf;
        rec.error = kInf;
        try {
            const PulseSchedule s = schedule_for(x);
            GateOptions o;
            o.jobs = problem_.jobs;
            o.nodes = problem_.settings.search_nodes;
            o.check_convergence = false;
            const GateResult r = assemble_rho(config_, s, o);
            rec.error = r.error();
            rec.gate_time = s.total_time();
            if (problem_.settings.objective == Objective::MinError) {
                rec.objective = rec.error;
            } else {
                const double ceiling = problem_.settings.error_ceiling;
                rec.objective = rec.gate_time;
                if (rec.error > ceiling)
                    rec.objective *= 1.0 + (rec.error - ceiling) / ceiling;
            }
        } catch (const Error&) {
        }
        const double prev = log_.empty() ? kInf : log_.back().best_objective;
        rec.best_objective = std::min(prev, rec.objective);
        log_.push_back(rec);
        return rec;
    }

    const Bounds& bounds() const { return bounds_; }
    const std::vector<EvaluationRecord>& log() const { return log_; }
    int budget() const { return problem_.settings.budget; }
    bool exhausted() const { return static_cast<int>(log_.size()) >= budget(); }

private:
    const OptimizationProblem& problem_;
    const GateConfig& config_;
    int n_ = 0;
    PulseSchedule shape_;
    Bounds bounds_;
    std::vector<EvaluationRecord> log_;
};

} // namespace

OptimizationProblem OptimizationProblem::from_config(const GateConfig& config)
{
    OptimizationProblem p;
    p.settings = config.optimization;
    p.seed = PulseSchedule::from_config(config);
    if (const char* env = std::getenv("RYDGATE_SEED")) {
        try {
            p.rng_seed = std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParameter, std::string("RYDGATE_SEED (must be an unsigned integer, got ") +
                                                         env + ")");
        }
    }
    return p;
}

PulseSchedule calibrate_total_time(const GateConfig& config, const PulseSchedule& shape, double total_time)
{
    auto calibrated = [&](double tr) {
        PulseSchedule s = shape;
        s.ramp_time = tr;
        s.peak_time = tr;
        s.hold_time = 0;
        s.prepare();
        return calibrate_hold(config, s, M_PI);
    };
    auto mismatch = [&](double tr) { return calibrated(tr).total_time() - total_time; };

    const double lo = 0.02 * total_time;
    const double hi = 0.5 * total_time;
    const double f_hi = mismatch(hi);
    if (f_hi < 0) {
        std::ostringstream os;
        os << "ramps alone overshoot the phase before filling " << total_time << " us";
        throw Error(ErrorKind::PhaseUnreachable, os.str());
    }
    if (f_hi == 0)
        return calibrated(hi);
    const double f_lo = mismatch(lo);
    if (f_lo > 0) {
        std::ostringstream os;
        os << "a pi conditional phase needs more than " << total_time << " us";
        throw Error(ErrorKind::PhaseUnreachable, os.str());
    }
    boost::math::tools::eps_tolerance<double> tol(40);
    std::uintmax_t iters = 60;
    auto [a, b] = boost::math::tools::toms748_solve(mismatch, lo, hi, f_lo, f_hi, tol, iters);
    return calibrated(0.5 * (a + b));
}

OptimizationResult optimize(const OptimizationProblem& problem, const GateConfig& config)
{
    if (problem.settings.node_count < 1)
        throw Error(ErrorKind::InvalidParameter, "node_count (must be >= 1)");
    Search search(problem, config);
    std::mt19937_64 rng(problem.rng_seed);

    struct Vertex {
        std::vector<double> x;
        double f;
    };
    const std::vector<double> x0 = search.seed_point();
    const std::size_t dim = x0.size();
    std::vector<Vertex> simplex;
    simplex.push_back({x0, search.evaluate(x0).objective});
    for (std::size_t i = 0; i < dim && !search.exhausted(); ++i) {
        std::vector<double> x = x0;
        const double span = search.bounds().hi[i] - search.bounds().lo[i];
        double step = 0.1 * span * (rng() % 2 == 0 ? 1.0 : -1.0);
        if (x[i] + step > search.bounds().hi[i] || x[i] + step < search.bounds().lo[i])
            step = -step;
        x[i] += step;
        search.bounds().clamp(x);
        simplex.push_back({x, search.evaluate(x).objective});
    }

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    auto point = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; ++i)
            x[i] = c[i] + t * (w[i] - c[i]);
        search.bounds().clamp(x);
        return x;
    };

    while (simplex.size() == dim + 1 && !search.exhausted()) {
        order();
        std::vector<double> c(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v)
            for (std::size_t i = 0; i < dim; ++i)
                c[i] += simplex[v].x[i] / dim;
        Vertex& worst = simplex.back();

        const std::vector<double> xr = point(c, worst.x, -1.0);
        const double fr = search.evaluate(xr).objective;
        if (fr < simplex.front().f) {
            if (search.exhausted()) {
                worst = {xr, fr};
                break;
            }
            const std::vector<double> xe = point(c, worst.x, -2.0);
            const double fe = search.evaluate(xe).objective;
            worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < simplex[dim - 1].f) {
            worst = {xr, fr};
        } else {
            if (search.exhausted())
                break;
            const bool outside = fr < worst.f;
            const std::vector<double> xc = point(c, outside ? xr : worst.x, 0.5);
            const double fc = search.evaluate(xc).objective;
            if (fc < std::min(fr, worst.f)) {
                worst = {xc, fc};
            } else {
                for (std::size_t v = 1; v <= dim && !search.exhausted(); ++v) {
                    simplex[v].x = point(simplex.front().x, simplex[v].x, 0.5);
                    simplex[v].f = search.evaluate(simplex[v].x).objective;
                }
            }
        }
    }

    const auto& log = search.log();
    auto best = std::min_element(log.begin(), log.end(),
                                 [](const EvaluationRecord& a, const EvaluationRecord& b) {
                                     return a.objective < b.objective;
                                 });
    if (best == log.end() || !std::isfinite(best->objective))
        throw Error(ErrorKind::InfeasibleProblem, "no candidate schedule reaches a pi conditional phase");

    OptimizationResult out;
    out.schedule = search.schedule_for(best->parameters);
    GateOptions o;
    o.jobs = problem.jobs;
    o.check_convergence = false;
    out.result = assemble_rho(config, out.schedule, o);
    out.objective = best->objective;
    out.seed_objective = log.front().objective;
    out.log = log;
    return out;
}

} // namespace rydgate
