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

#include "rydgate/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <sstream>

#ifndef RYDGATE_VERSION
#define RYDGATE_VERSION "0.0.0"
#endif

namespace rydgate {

namespace {

Json matrix_json(const Eigen::Matrix4cd& m)
{
    Json re = Json::array(), im = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json r = Json::array(), c = Json::array();
        for (int j = 0; j < 4; ++j) {
            r.push_back(m(i, j).real());
            c.push_back(m(i, j).imag());
        }
        re.push_back(r);
        im.push_back(c);
    }
    return Json{{"real", re}, {"imag", im}};
}

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

} // namespace

Json to_json(const GateResult& r)
{
    Json j;
    j["configuration"] = std::string(configuration_name(r.configuration));
    j["fidelity"] = r.fidelity;
    j["infidelity"] = r.error();
    j["fidelity_no_dipole_force"] = r.fidelity_no_force;
    j["loss"] = r.loss;
    j["gate_time_us"] = r.gate_time;
    j["ramp_time_us"] = r.ramp_time;
    j["peak_time_us"] = r.peak_time;
    j["hold_time_us"] = r.hold_time;
    j["phases"] = {{"00", r.phases[0]}, {"01", r.phases[1]}, {"10", r.phases[2]}, {"11", r.phases[3]}};
    j["conditional_phase"] = r.conditional_phase();
    j["calibration_phase"] = r.calibration_phase;
    j["delta_p_rel_hbar_k"] = r.delta_p_rel;
    j["dipole_force_factor"] = r.force_factor;
    j["ground_return"] = r.ground_return;
    j["decay_exponent"] = r.decay_exponent;
    j["excitation_time_us"] = r.excitation_time;
    j["quadrature_nodes"] = r.quadrature_nodes;
    j["convergence_delta"] = r.convergence_delta;
    j["rho"] = matrix_json(r.rho);
    return j;
}

Json to_json(const ErrorBudget& b)
{
    return Json{{"diabatic", b.diabatic}, {"decay", b.decay},  {"doppler", b.doppler},
                {"dipole_force", b.dipole_force}, {"cross", b.cross}, {"total", b.total}};
}

Json to_json(const PulseSchedule& s)
{
    Json j;
    j["shape"] = std::string(ramp_shape_name(s.shape));
    j["ramp_time_us"] = s.ramp_time;
    j["peak_time_us"] = s.peak_time;
    j["hold_time_us"] = s.hold_time;
    j["gate_time_us"] = s.total_time();
    j["rabi_max_mhz"] = s.rabi_max / kTwoPi;
    j["detuning_start_mhz"] = s.detuning_start / kTwoPi;
    j["detuning_end_mhz"] = s.detuning_end / kTwoPi;
    if (!s.nodes.empty()) {
        Json nodes = Json::array();
        for (const ControlPoint& c : s.nodes)
            nodes.push_back({c.time * s.ramp_time, c.rabi / kTwoPi, c.detuning / kTwoPi});
        j["nodes"] = nodes;
    }
    return j;
}

std::string scan_csv(const ScanResult& scan, const std::string& manifest_name)
{
    std::ostringstream os;
    if (!manifest_name.empty())
        os << "# manifest: " << manifest_name << "\n";
    for (const ScanFailure& f : scan.failures)
        os << "# skipped ramp_time_us=" << fmt(f.ramp_time) << ": " << f.message << "\n";
    os << "ramp_time_us,err_nomotion,err_single,err_dopplerfree,err_no_dipole_force,gate_time_us\n";
    for (const ScanRow& r : scan.rows)
        os << fmt(r.ramp_time) << ',' << fmt(r.err_nomotion) << ',' << fmt(r.err_single) << ','
           << fmt(r.err_dopplerfree) << ',' << fmt(r.err_no_dipole_force) << ',' << fmt(r.gate_time) << "\n";
    return os.str();
}

std::string optimizer_log_csv(const std::vector<EvaluationRecord>& log, const std::string& manifest_name)
{
    std::ostringstream os;
    if (!manifest_name.empty())
        os << "# manifest: " << manifest_name << "\n";
    os << "iteration,objective,best_objective,error,gate_time_us";
    const std::size_t np = log.empty() ? 0 : log.front().parameters.size();
    for (std::size_t i = 0; i < np; ++i)
        os << ",p" << i;
    os << "\n";
    for (const EvaluationRecord& r : log) {
        os << r.iteration << ',' << fmt(r.objective) << ',' << fmt(r.best_objective) << ',' << fmt(r.error) << ','
           << fmt(r.gate_time);
        for (double p : r.parameters)
            os << ',' << fmt(p);
        os << "\n";
    }
    return os.str();
}

Json RunManifest::to_json() const
{
    return Json{{"config_hash", config_hash}, {"version", version}, {"command", command},
                {"started", started},         {"finished", finished}, {"outputs", outputs}};
}

std::string config_hash(const GateConfig& config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_config(config)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string tool_version() { return RYDGATE_VERSION; }

} // namespace rydgate
