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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace rydgate {

std::string_view configuration_name(Configuration c)
{
    return c == Configuration::SingleLaser ? "single-laser" : "doppler-free";
}

Configuration parse_configuration(std::string_view name)
{
    if (name == "single-laser" || name == "SingleLaser")
        return Configuration::SingleLaser;
    if (name == "doppler-free" || name == "DopplerFree")
        return Configuration::DopplerFree;
    throw Error(ErrorKind::InvalidParameter,
                "configuration (must be single-laser or doppler-free, got '" + std::string(name) + "')");
}

std::string_view ramp_shape_name(RampShape s)
{
    switch (s) {
    case RampShape::SmoothstepSin2: return "sin2";
    case RampShape::Linear: return "linear";
    case RampShape::PiecewiseNodes: return "piecewise";
    }
    return "sin2";
}

namespace {

// Minimal reader for the TOML subset used by config files: [section] headers,
// key = value pairs, numbers, strings, booleans and (nested) arrays.
struct Value;
using Array = std::vector<Value>;
struct Value {
    std::variant<double, std::string, bool, Array> v;
};

class Reader {
public:
    explicit Reader(std::string_view text) : s_(text) {}

    std::map<std::string, std::map<std::string, Value>> parse()
    {
        std::map<std::string, std::map<std::string, Value>> out;
        std::string section;
        while (true) {
            skip_space_and_comments(true);
            if (pos_ >= s_.size())
                break;
            if (s_[pos_] == '[') {
                ++pos_;
                section = bare_word();
                expect(']');
                if (!kSections.count(section))
                    fail("unknown section [" + section + "]");
                out[section];
                continue;
            }
            std::string key = bare_word();
            skip_space_and_comments(false);
            expect('=');
            skip_space_and_comments(false);
            if (section.empty())
                fail("key '" + key + "' outside of a section");
            auto& table = out[section];
            if (table.count(key))
                fail("duplicate key '" + key + "'");
            table[key] = value();
            skip_space_and_comments(false);
            if (pos_ < s_.size() && s_[pos_] != '\n')
                fail("trailing characters after '" + key + "'");
        }
        return out;
    }

private:
    static inline const std::set<std::string> kSections{"physics", "pulse", "numerics", "optimization"};

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::InvalidParameter, "config syntax at line " + std::to_string(line()) + ": " + what);
    }

    int line() const
    {
        int n = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i)
            n += s_[i] == '\n';
        return n;
    }

    void skip_space_and_comments(bool newlines)
    {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n')
                    ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    void expect(char c)
    {
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string bare_word()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-'))
            ++pos_;
        if (start == pos_)
            fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    Value value()
    {
        if (pos_ >= s_.size())
            fail("missing value");
        char c = s_[pos_];
        if (c == '"') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != '"' && s_[pos_] != '\n')
                ++pos_;
            if (pos_ >= s_.size() || s_[pos_] != '"')
                fail("unterminated string");
            std::string str(s_.substr(start, pos_ - start));
            ++pos_;
            return Value{str};
        }
        if (c == '[') {
            ++pos_;
            Array items;
            while (true) {
                skip_space_and_comments(true);
                if (pos_ < s_.size() && s_[pos_] == ']') {
                    ++pos_;
                    break;
                }
                items.push_back(value());
                skip_space_and_comments(true);
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                expect(']');
                break;
            }
            return Value{items};
        }
        if (s_.substr(pos_, 4) == "true") {
            pos_ += 4;
            return Value{true};
        }
        if (s_.substr(pos_, 5) == "false") {
            pos_ += 5;
            return Value{false};
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                    s_[pos_] == '-' || s_[pos_] == '+' || s_[pos_] == '_'))
            ++pos_;
        std::string token(s_.substr(start, pos_ - start));
        std::erase(token, '_');
        double d = 0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), d);
        if (token.empty() || ec != std::errc() || end != token.data() + token.size())
            fail("cannot parse value '" + token + "'");
        return Value{d};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

using Table = std::map<std::string, Value>;

class Fields {
public:
    Fields(std::map<std::string, Table> tables) : tables_(std::move(tables)) {}

    const Value* find(const std::string& section, const std::string& key)
    {
        auto t = tables_.find(section);
        if (t == tables_.end())
            return nullptr;
        auto it = t->second.find(key);
        if (it == t->second.end())
            return nullptr;
        used_.insert(section + "." + key);
        return &it->second;
    }

    const Value& require(const std::string& section, const std::string& key)
    {
        const Value* v = find(section, key);
        if (!v)
            throw Error(ErrorKind::MissingParameter, key + " (in [" + section + "])");
        return *v;
    }

    void check_unused() const
    {
        for (const auto& [section, table] : tables_)
            for (const auto& [key, value] : table)
                if (!used_.count(section + "." + key))
                    throw Error(ErrorKind::InvalidParameter, "unknown key '" + key + "' in [" + section + "]");
    }

private:
    std::map<std::string, Table> tables_;
    std::set<std::string> used_;
};

double as_number(const Value& v, const std::string& key)
{
    if (auto d = std::get_if<double>(&v.v))
        return *d;
    throw Error(ErrorKind::InvalidParameter, key + " (must be a number)");
}

int as_int(const Value& v, const std::string& key)
{
    double d = as_number(v, key);
    if (d != std::floor(d) || std::abs(d) > 1e9)
        throw Error(ErrorKind::InvalidParameter, key + " (must be an integer)");
    return static_cast<int>(d);
}

std::string as_string(const Value& v, const std::string& key)
{
    if (auto s = std::get_if<std::string>(&v.v))
        return *s;
    throw Error(ErrorKind::InvalidParameter, key + " (must be a string)");
}

void read_number(Fields& f, const char* section, const char* key, double& out)
{
    if (const Value* v = f.find(section, key))
        out = as_number(*v, key);
}

void read_int(Fields& f, const char* section, const char* key, int& out)
{
    if (const Value* v = f.find(section, key))
        out = as_int(*v, key);
}

void read_optional(Fields& f, const char* section, const char* key, std::optional<double>& out)
{
    if (const Value* v = f.find(section, key))
        out = as_number(*v, key);
}

std::vector<ControlPoint> read_nodes(const Value& v)
{
    const auto* rows = std::get_if<Array>(&v.v);
    if (!rows)
        throw Error(ErrorKind::InvalidParameter, "nodes (must be a list of [t, rabi, detuning])");
    std::vector<ControlPoint> nodes;
    for (const Value& row : *rows) {
        const auto* r = std::get_if<Array>(&row.v);
        if (!r || r->size() != 3)
            throw Error(ErrorKind::InvalidParameter, "nodes (each entry must be [t, rabi, detuning])");
        nodes.push_back({as_number((*r)[0], "nodes"), as_number((*r)[1], "nodes"), as_number((*r)[2], "nodes")});
    }
    return nodes;
}

[[noreturn]] void bound_violation(const std::string& field, const std::string& bound, double got)
{
    std::ostringstream os;
    os.precision(17);
    os << field << " (must be " << bound << ", got " << got << ")";
    throw Error(ErrorKind::InvalidParameter, os.str());
}

void require_finite(const std::string& field, double v)
{
    if (!std::isfinite(v))
        bound_violation(field, "finite", v);
}

} // namespace

void validate(const GateConfig& c)
{
    for (auto [name, v] : {std::pair{"rabi_max", c.rabi_max}, {"detuning_start", c.detuning_start},
                           {"detuning_end", c.detuning_end}, {"gamma", c.gamma}, {"separation", c.separation},
                           {"c6", c.c6}, {"nbar", c.nbar}, {"trap_freq", c.trap_freq},
                           {"wavelength", c.wavelength}, {"atom_mass", c.atom_mass}, {"ramp_time", c.ramp_time},
                           {"max_hold_time", c.max_hold_time}, {"integrator_tol", c.integrator_tol}})
        require_finite(name, v);

    if (c.rabi_max < 0)
        bound_violation("rabi_max", ">= 0", c.rabi_max);
    if (c.gamma < 0)
        bound_violation("gamma", ">= 0", c.gamma);
    if (c.separation <= 0)
        bound_violation("separation", "> 0", c.separation);
    if (c.c6 < 0)
        bound_violation("c6", ">= 0", c.c6);
    if (c.vdd_exponent < 1)
        bound_violation("vdd_exponent", ">= 1", c.vdd_exponent);
    if (c.nbar < 0)
        bound_violation("nbar", ">= 0", c.nbar);
    if (c.trap_freq <= 0)
        bound_violation("trap_freq", "> 0", c.trap_freq);
    if (c.wavelength <= 0)
        bound_violation("wavelength", "> 0", c.wavelength);
    if (c.atom_mass <= 0)
        bound_violation("atom_mass", "> 0", c.atom_mass);
    if (c.ramp_time <= 0)
        bound_violation("ramp_time", "> 0", c.ramp_time);
    if (c.hold_time && !(*c.hold_time >= 0))
        bound_violation("hold_time", ">= 0 or \"auto\"", *c.hold_time);
    if (c.max_hold_time <= 0)
        bound_violation("max_hold_time", "> 0", c.max_hold_time);
    if (c.quadrature_nodes < 3 || c.quadrature_nodes % 2 == 0)
        bound_violation("quadrature_nodes", "odd and >= 3", c.quadrature_nodes);
    if (c.integrator_tol <= 0 || c.integrator_tol > 1e-3)
        bound_violation("integrator_tol", "in (0, 1e-3]", c.integrator_tol);
    if (c.checkpoints < 0)
        bound_violation("checkpoints", ">= 0", c.checkpoints);

    if (c.shape == RampShape::PiecewiseNodes) {
        const auto& n = c.nodes;
        if (n.size() < 2)
            bound_violation("nodes", "at least 2 control points", static_cast<double>(n.size()));
        if (n.front().time != 0 || n.front().rabi != 0)
            bound_violation("nodes", "starting at t = 0 with rabi = 0", n.front().time);
        if (std::abs(n.back().time - c.ramp_time) > 1e-12 * c.ramp_time)
            bound_violation("nodes", "ending at t = ramp_time", n.back().time);
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i].rabi < 0)
                bound_violation("nodes", "rabi >= 0", n[i].rabi);
            if (i > 0 && !(n[i].time > n[i - 1].time))
                bound_violation("nodes", "strictly increasing in time", n[i].time);
        }
    }

    const auto& o = c.optimization;
    if (o.node_count < 1)
        bound_violation("node_count", ">= 1", o.node_count);
    if (o.budget < 1)
        bound_violation("budget", ">= 1", o.budget);
    if (o.search_nodes < 1 || o.search_nodes % 2 == 0)
        bound_violation("search_nodes", "odd and >= 1", o.search_nodes);
    if (o.rabi_min < 0 || o.rabi_max < o.rabi_min)
        bound_violation("optimization.rabi_max", ">= rabi_min >= 0", o.rabi_max);
    if (o.detuning_max < o.detuning_min)
        bound_violation("optimization.detuning_max", ">= detuning_min", o.detuning_max);
    if (o.total_time <= 0)
        bound_violation("total_time", "> 0", o.total_time);
    if (o.error_ceiling <= 0)
        bound_violation("error_ceiling", "> 0", o.error_ceiling);
}

GateConfig load_config(std::string_view text)
{
    Fields f(Reader(text).parse());
    GateConfig c;

    if (const Value* v = f.find("physics", "configuration"))
        c.configuration = parse_configuration(as_string(*v, "configuration"));
    c.rabi_max = as_number(f.require("physics", "rabi_max"), "rabi_max");
    c.detuning_start = as_number(f.require("physics", "detuning_start"), "detuning_start");
    c.detuning_end = as_number(f.require("physics", "detuning_end"), "detuning_end");
    c.gamma = as_number(f.require("physics", "gamma"), "gamma");
    c.separation = as_number(f.require("physics", "separation"), "separation");
    c.nbar = as_number(f.require("physics", "nbar"), "nbar");
    read_number(f, "physics", "c6", c.c6);
    read_int(f, "physics", "vdd_exponent", c.vdd_exponent);
    read_optional(f, "physics", "vdd_pm", c.vdd_pm);
    read_optional(f, "physics", "vdd_mm", c.vdd_mm);
    read_number(f, "physics", "trap_freq", c.trap_freq);
    read_number(f, "physics", "wavelength", c.wavelength);
    read_number(f, "physics", "atom_mass", c.atom_mass);

    c.ramp_time = as_number(f.require("pulse", "ramp_time"), "ramp_time");
    if (const Value* v = f.find("pulse", "hold_time")) {
        if (auto s = std::get_if<std::string>(&v->v)) {
            if (*s != "auto")
                throw Error(ErrorKind::InvalidParameter, "hold_time (must be a number or \"auto\")");
        } else {
            c.hold_time = as_number(*v, "hold_time");
        }
    }
    read_number(f, "pulse", "max_hold_time", c.max_hold_time);
    if (const Value* v = f.find("pulse", "shape")) {
        std::string s = as_string(*v, "shape");
        if (s == "sin2")
            c.shape = RampShape::SmoothstepSin2;
        else if (s == "linear")
            c.shape = RampShape::Linear;
        else if (s == "piecewise")
            c.shape = RampShape::PiecewiseNodes;
        else
            throw Error(ErrorKind::InvalidParameter, "shape (must be sin2, linear or piecewise, got '" + s + "')");
    }
    if (const Value* v = f.find("pulse", "nodes"))
        c.nodes = read_nodes(*v);
    if (c.shape == RampShape::PiecewiseNodes && c.nodes.empty())
        throw Error(ErrorKind::MissingParameter, "nodes (in [pulse], required for shape = \"piecewise\")");

    read_int(f, "numerics", "quadrature_nodes", c.quadrature_nodes);
    read_number(f, "numerics", "integrator_tol", c.integrator_tol);
    read_int(f, "numerics", "checkpoints", c.checkpoints);

    auto& o = c.optimization;
    o.rabi_max = c.rabi_max;
    o.detuning_min = std::min(c.detuning_start, c.detuning_end);
    o.detuning_max = std::max(c.detuning_start, c.detuning_end);
    if (const Value* v = f.find("optimization", "objective")) {
        std::string s = as_string(*v, "objective");
        if (s == "min-error")
            o.objective = Objective::MinError;
        else if (s == "min-time")
            o.objective = Objective::MinTime;
        else
            throw Error(ErrorKind::InvalidParameter, "objective (must be min-error or min-time, got '" + s + "')");
    }
    read_number(f, "optimization", "total_time", o.total_time);
    read_number(f, "optimization", "error_ceiling", o.error_ceiling);
    read_int(f, "optimization", "node_count", o.node_count);
    read_int(f, "optimization", "budget", o.budget);
    read_number(f, "optimization", "rabi_min", o.rabi_min);
    read_number(f, "optimization", "rabi_max", o.rabi_max);
    read_number(f, "optimization", "detuning_min", o.detuning_min);
    read_number(f, "optimization", "detuning_max", o.detuning_max);
    read_int(f, "optimization", "search_nodes", o.search_nodes);

    f.check_unused();
    validate(c);
    return c;
}

GateConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidParameter, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string serialize_config(const GateConfig& c)
{
    std::ostringstream os;
    os.precision(17);
    os << "[physics]\n";
    os << "configuration = \"" << configuration_name(c.configuration) << "\"\n";
    os << "rabi_max = " << c.rabi_max << "\n";
    os << "detuning_start = " << c.detuning_start << "\n";
    os << "detuning_end = " << c.detuning_end << "\n";
    os << "gamma = " << c.gamma << "\n";
    os << "separation = " << c.separation << "\n";
    os << "c6 = " << c.c6 << "\n";
    os << "vdd_exponent = " << c.vdd_exponent << "\n";
    if (c.vdd_pm)
        os << "vdd_pm = " << *c.vdd_pm << "\n";
    if (c.vdd_mm)
        os << "vdd_mm = " << *c.vdd_mm << "\n";
    os << "nbar = " << c.nbar << "\n";
    os << "trap_freq = " << c.trap_freq << "\n";
    os << "wavelength = " << c.wavelength << "\n";
    os << "atom_mass = " << c.atom_mass << "\n";

    os << "\n[pulse]\n";
    os << "ramp_time = " << c.ramp_time << "\n";
    if (c.hold_time)
        os << "hold_time = " << *c.hold_time << "\n";
    else
        os << "hold_time = \"auto\"\n";
    os << "max_hold_time = " << c.max_hold_time << "\n";
    os << "shape = \"" << ramp_shape_name(c.shape) << "\"\n";
    if (!c.nodes.empty()) {
        os << "nodes = [\n";
        for (const auto& n : c.nodes)
            os << "  [" << n.time << ", " << n.rabi << ", " << n.detuning << "],\n";
        os << "]\n";
    }

    os << "\n[numerics]\n";
    os << "quadrature_nodes = " << c.quadrature_nodes << "\n";
    os << "integrator_tol = " << c.integrator_tol << "\n";
    os << "checkpoints = " << c.checkpoints << "\n";

    const auto& o = c.optimization;
    os << "\n[optimization]\n";
    os << "objective = \"" << (o.objective == Objective::MinError ? "min-error" : "min-time") << "\"\n";
    os << "total_time = " << o.total_time << "\n";
    os << "error_ceiling = " << o.error_ceiling << "\n";
    os << "node_count = " << o.node_count << "\n";
    os << "budget = " << o.budget << "\n";
    os << "rabi_min = " << o.rabi_min << "\n";
    os << "rabi_max = " << o.rabi_max << "\n";
    os << "detuning_min = " << o.detuning_min << "\n";
    os << "detuning_max = " << o.detuning_max << "\n";
    os << "search_nodes = " << o.search_nodes << "\n";
    return os.str();
}

DerivedParams derive(const GateConfig& c)
{
    validate(c);
    DerivedParams d;
    d.k_l = kTwoPi / (c.wavelength * 1e-3);
    const double k_si = d.k_l * 1e6; // rad/m
    d.omega_rec = kHbar * k_si * k_si / (2.0 * c.atom_mass) * 1e-6;
    d.doppler_per_hbar_k = 2.0 * d.omega_rec;

    d.rabi_max = kTwoPi * c.rabi_max;
    d.detuning_start = kTwoPi * c.detuning_start;
    d.detuning_end = kTwoPi * c.detuning_end;
    d.gamma = kTwoPi * c.gamma;
    d.omega_osc = kTwoPi * c.trap_freq;

    // Δp_th² = (n̄+½)·m·ħω_osc, expressed in (ħk)².
    d.delta_p_th = std::sqrt((c.nbar + 0.5) * d.omega_osc / d.doppler_per_hbar_k);
    d.eta = std::sqrt(d.omega_rec / d.omega_osc);

    const double n = c.vdd_exponent;
    d.vdd_at_zbar = -kTwoPi * c.c6 / std::pow(c.separation, n);
    d.vdd_gradient_at_zbar = -n * d.vdd_at_zbar / c.separation;
    d.reduced_mass = 0.5 * c.atom_mass;

    d.vdd_pp = d.vdd_at_zbar;
    d.vdd_pm = c.vdd_pm ? kTwoPi * *c.vdd_pm : d.vdd_at_zbar;
    d.vdd_mm = c.vdd_mm ? kTwoPi * *c.vdd_mm : d.vdd_at_zbar;
    d.grad_pp = -n * d.vdd_pp / c.separation;
    d.grad_pm = -n * d.vdd_pm / c.separation;
    d.grad_mm = -n * d.vdd_mm / c.separation;
    return d;
}

} // namespace rydgate
