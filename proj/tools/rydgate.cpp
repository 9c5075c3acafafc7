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

#include "rydgate/config.hpp"
#include "rydgate/error.hpp"
#include "rydgate/gate.hpp"
#include "rydgate/optimizer.hpp"
#include "rydgate/oracles.hpp"
#include "rydgate/pulse.hpp"
#include "rydgate/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace rydgate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOracleFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
    std::string config_path;
    std::string configuration;
    std::string out_dir = "rydgate-out";
    int jobs = 0;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config_path, "Configuration file")->required();
    sub->add_option("--configuration", c.configuration, "Laser configuration override")
        ->check(CLI::IsMember({"single-laser", "doppler-free"}));
    sub->add_option("--jobs", c.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", c.out_dir, "Output directory");
}

class Run {
public:
    Run(const Common& c, std::string command) : common_(c), command_(std::move(command))
    {
        config_ = load_config_file(c.config_path);
        if (!c.configuration.empty())
            config_.configuration = parse_configuration(c.configuration);
        validate(config_);
        manifest_.config_hash = config_hash(config_);
        manifest_.version = tool_version();
        manifest_.command = command_;
        manifest_.started = utc_timestamp();
        fs::create_directories(c.out_dir);
    }

    const GateConfig& config() const { return config_; }
    int jobs() const { return common_.jobs; }

    void write(const std::string& name, const std::string& content)
    {
        const fs::path p = fs::path(common_.out_dir) / name;
        std::ofstream f(p);
        f << content;
        if (!f)
            throw Error(ErrorKind::InvalidParameter, "out (cannot write " + p.string() + ")");
        manifest_.outputs.push_back(p.string());
    }

    void write_json(const std::string& name, Json doc)
    {
        doc["manifest"] = kManifestName;
        write(name, doc.dump(2) + "\n");
    }

    void finish()
    {
        manifest_.finished = utc_timestamp();
        std::ofstream f(fs::path(common_.out_dir) / kManifestName);
        f << manifest_.to_json().dump(2) << "\n";
    }

    static constexpr const char* kManifestName = "manifest.json";

private:
    Common common_;
    std::string command_;
    GateConfig config_;
    RunManifest manifest_;
};

PulseSchedule schedule_for(const GateConfig& config)
{
    if (config.hold_time)
        return PulseSchedule::from_config(config);
    return calibrate_hold(config, M_PI);
}

std::vector<double> parse_ramp_times(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParameter, "ramp-times (not a number: '" + item + "')");
        }
    }
    if (out.empty())
        throw Error(ErrorKind::InvalidParameter, "ramp-times (empty list)");
    for (double t : out)
        if (!(t > 0))
            throw Error(ErrorKind::InvalidParameter, "ramp-times (must be > 0)");
    return out;
}

void print_budget(const ErrorBudget& b)
{
    std::cout << "  diabatic      " << b.diabatic << "\n"
              << "  decay         " << b.decay << "\n"
              << "  doppler       " << b.doppler << "\n"
              << "  dipole force  " << b.dipole_force << "\n"
              << "  cross terms   " << b.cross << "\n";
}

int cmd_simulate(const Common& c, const std::string& command)
{
    Run run(c, command);
    const PulseSchedule s = schedule_for(run.config());
    GateOptions o;
    o.jobs = run.jobs();
    GateResult r;
    const ErrorBudget b = error_budget(run.config(), s, o, &r);
    run.write_json("result.json", Json{{"schedule", to_json(s)}, {"result", to_json(r)}, {"budget", to_json(b)}});
    run.finish();

    std::cout << std::setprecision(6) << "configuration  " << configuration_name(run.config().configuration) << "\n"
              << "gate time      " << r.gate_time << " us (ramp " << s.ramp_time << ", hold " << s.hold_time << ")\n"
              << "fidelity       " << r.fidelity << "\n"
              << "1-F            " << r.error() << "\n"
              << "1-F no force   " << 1.0 - r.fidelity_no_force << "\n"
              << "loss           " << r.loss << "\n"
              << "budget\n";
    print_budget(b);
    return kExitOk;
}

int cmd_scan(const Common& c, const std::string& ramp_text, const std::string& command)
{
    const std::vector<double> ramps = parse_ramp_times(ramp_text);
    Run run(c, command);
    GateOptions o;
    o.jobs = run.jobs();
    const ScanResult scan = scan_ramp(run.config(), ramps, o);
    const std::string csv = scan_csv(scan, Run::kManifestName);
    run.write("scan.csv", csv);
    run.finish();
    std::cout << csv;
    return kExitOk;
}

int cmd_calibrate(const Common& c, const std::string& command)
{
    Run run(c, command);
    const PulseSchedule s = calibrate_hold(run.config(), M_PI);
    const PhaseRecord ph = measure_phases(run.config(), s);
    Json doc = to_json(s);
    doc["conditional_phase"] = ph.conditional_phase;
    doc["ground_return"] = ph.ground_return;
    doc["adiabaticity_margin"] = adiabaticity_margin(s, run.config());
    run.write_json("schedule.json", doc);
    run.finish();
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_budget(const Common& c, const std::string& command)
{
    Run run(c, command);
    const PulseSchedule s = schedule_for(run.config());
    GateOptions o;
    o.jobs = run.jobs();
    const ErrorBudget b = error_budget(run.config(), s, o);
    run.write_json("budget.json", Json{{"schedule", to_json(s)}, {"budget", to_json(b)}});
    run.finish();
    std::cout << std::setprecision(6) << "1-F " << b.total << "\n";
    print_budget(b);
    return kExitOk;
}

int cmd_optimize(const Common& c, const std::string& command)
{
    Run run(c, command);
    OptimizationProblem p = OptimizationProblem::from_config(run.config());
    p.jobs = run.jobs();
    const OptimizationResult r = optimize(p, run.config());
    run.write_json("optimized.json", Json{{"schedule", to_json(r.schedule)},
                                          {"result", to_json(r.result)},
                                          {"objective", r.objective},
                                          {"seed_objective", r.seed_objective},
                                          {"evaluations", r.log.size()}});
    run.write("optimizer_log.csv", optimizer_log_csv(r.log, Run::kManifestName));
    run.finish();
    std::cout << std::setprecision(6) << "evaluations    " << r.log.size() << "\n"
              << "seed objective " << r.seed_objective << "\n"
              << "best objective " << r.objective << "\n"
              << "gate time      " << r.schedule.total_time() << " us\n"
              << "1-F (full)     " << r.result.error() << "\n";
    return kExitOk;
}

int cmd_oracle_check(const Common& c, const std::string& command)
{
    Run run(c, command);
    const std::vector<OracleOutcome> outcomes = run_oracles(run.config(), run.jobs());
    Json list = Json::array();
    bool all = true;
    for (const OracleOutcome& o : outcomes) {
        all = all && o.passed;
        std::cout << (o.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << o.name << " residual "
                  << std::setprecision(4) << o.residual << " threshold " << o.threshold;
        if (!o.detail.empty())
            std::cout << "  (" << o.detail << ")";
        std::cout << "\n";
        list.push_back({{"name", o.name},
                        {"passed", o.passed},
                        {"residual", o.residual},
                        {"threshold", o.threshold},
                        {"detail", o.detail}});
    }
    run.write_json("oracles.json", Json{{"oracles", list}, {"all_passed", all}});
    run.finish();
    return all ? kExitOk : kExitOracleFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adiabatic Rydberg-dressed controlled-Z gate simulator"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    Common common;
    std::string ramp_text;
    auto* simulate = app.add_subcommand("simulate", "Calibrate, propagate and report fidelity with the error budget");
    auto* scan = app.add_subcommand("scan", "Gate error against ramp time for every variant (CSV)");
    auto* calibrate = app.add_subcommand("calibrate", "Find the hold time giving a pi conditional phase");
    auto* budget = app.add_subcommand("budget", "Error budget by cumulative mechanism toggles");
    auto* optimize_cmd = app.add_subcommand("optimize", "Nelder-Mead search over piecewise ramp shapes");
    auto* oracle = app.add_subcommand("oracle-check", "Run the self-consistency oracles");
    for (auto* sub : {simulate, scan, calibrate, budget, optimize_cmd, oracle})
        add_common(sub, common);
    scan->add_option("--ramp-times", ramp_text, "Comma-separated ramp times in us")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i)
        cmd << (i ? " " : "") << argv[i];

    try {
        if (*simulate)
            return cmd_simulate(common, cmd.str());
        if (*scan)
            return cmd_scan(common, ramp_text, cmd.str());
        if (*calibrate)
            return cmd_calibrate(common, cmd.str());
        if (*budget)
            return cmd_budget(common, cmd.str());
        if (*optimize_cmd)
            return cmd_optimize(common, cmd.str());
        return cmd_oracle_check(common, cmd.str());
    } catch (const Error& e) {
        std::cerr << "rydgate: " << e.what() << "\n";
        return is_config_error(e.kind()) ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "rydgate: " << e.what() << "\n";
        return kExitNumerical;
    }
}
