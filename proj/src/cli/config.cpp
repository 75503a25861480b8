// Copyright 2026 The lindet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindet/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "lindet/models.hpp"
#include "lindet/physical_realization.hpp"

namespace lindet::cli {

namespace {

const std::map<std::string, std::set<std::string>>& system_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"first_order", {"alpha", "beta"}},
        {"second_order", {"a1", "b1", "a2", "b2"}},
        {"expander", {"gamma", "chi", "omega_s"}},
        {"pole_zero", {"zeros", "poles", "gain", "g22"}},
        {"squeezer", {"gamma", "chi"}},
        {"cavity", {"gamma"}},
        {"statespace", {"a", "b", "c", "d", "picture"}},
        {"network",
         {"gamma", "g", "g_b", "g_bdag", "g_c", "g_cdag", "shift", "d_chain", "e_chain",
          "signal"}},
    };
    return keys;
}

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

double number(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) {
        throw ConfigError(where + " is missing '" + key + "'");
    }
    const Json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError("'" + key + "' in " + where + " must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError("'" + key + "' in " + where + " must be finite");
    }
    return x;
}

double number_or(const Json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

cplx complex_or(const Json& obj, const std::string& key, cplx fallback) {
    return obj.contains(key) ? complex_from_json(obj.at(key)) : fallback;
}

std::vector<cplx> complex_list(const Json& obj, const std::string& key) {
    std::vector<cplx> out;
    if (!obj.contains(key)) {
        return out;
    }
    const Json& v = obj.at(key);
    if (!v.is_array()) {
        throw ConfigError("'" + key + "' must be an array");
    }
    for (const Json& e : v) {
        out.push_back(complex_from_json(e));
    }
    return out;
}

tf::RationalFunction rational_from_json(const Json& obj, const std::string& where) {
    tf::RationalFunction rf;
    rf.zeros = complex_list(obj, "zeros");
    rf.poles = complex_list(obj, "poles");
    rf.gain = complex_or(obj, "gain", 1.0);
    try {
        rf.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return rf;
}

sens::Quadrature quadrature_from_json(const Json& j) {
    if (!j.is_string()) {
        throw ConfigError("quadrature must be \"amplitude\" or \"phase\"");
    }
    const auto s = j.get<std::string>();
    if (s == "amplitude") {
        return sens::Quadrature::amplitude;
    }
    if (s == "phase") {
        return sens::Quadrature::phase;
    }
    throw ConfigError("quadrature must be \"amplitude\" or \"phase\", got '" + s + "'");
}

Index index_from_json(const Json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError(what + " must be a non-negative integer");
    }
    return static_cast<Index>(j.get<long long>());
}

Mat square_or_empty(const Json& obj, const std::string& key, Index n, const std::string& where) {
    if (!obj.contains(key)) {
        return Mat();
    }
    Mat m = matrix_from_json(obj.at(key));
    if (m.rows() != n || m.cols() != n) {
        throw ConfigError("'" + key + "' in " + where + " must be " + std::to_string(n) + " x " +
                          std::to_string(n));
    }
    return m;
}

hidden::AuxChain chain_from_json(const Json& obj, const std::string& where) {
    check_keys(obj, {"g", "g_dag", "bs", "sq"}, where);
    hidden::AuxChain c;
    c.g = complex_list(obj, "g");
    c.g_dag = complex_list(obj, "g_dag");
    if (c.g_dag.empty()) {
        c.g_dag.assign(c.g.size(), 0.0);
    }
    if (c.g.empty()) {
        c.g.assign(c.g_dag.size(), 0.0);
    }
    c.bs = square_or_empty(obj, "bs", c.size(), where);
    c.sq = square_or_empty(obj, "sq", c.size(), where);
    return c;
}

std::string resolve_type(const Json& sys) {
    if (sys.contains("type")) {
        if (!sys.at("type").is_string()) {
            throw ConfigError("system.type must be a string");
        }
        return sys.at("type").get<std::string>();
    }
    if (sys.contains("order")) {
        const Json& o = sys.at("order");
        if (o == 1) {
            return "first_order";
        }
        if (o == 2) {
            return "second_order";
        }
        throw ConfigError("system.order must be 1 or 2");
    }
    throw ConfigError("system needs a 'type'");
}

Json strip(const Json& sys) {
    Json p = sys;
    p.erase("type");
    p.erase("order");
    return p;
}

}  // namespace

std::string to_string(JobKind kind) {
    switch (kind) {
        case JobKind::synth:
            return "synth";
        case JobKind::check:
            return "check";
        case JobKind::sens:
            return "sens";
        case JobKind::hidden:
            return "hidden";
        case JobKind::sweep:
            return "sweep";
    }
    return "synth";
}

JobKind job_kind_from_string(const std::string& s) {
    for (JobKind k : {JobKind::synth, JobKind::check, JobKind::sens, JobKind::hidden,
                      JobKind::sweep}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    if (s == "sensitivity") {
        return JobKind::sens;
    }
    throw ConfigError("unknown job kind '" + s + "'");
}

sens::ProbeCoupling PhysicalSpec::coupling() const {
    sens::ProbeCoupling c;
    c.carrier_frequency = omega0;
    c.cavity_length = length;
    c.photons = photons;
    return c;
}

bool SystemSpec::is_transfer_function() const {
    return type == "first_order" || type == "second_order" || type == "expander" ||
           type == "pole_zero";
}

bool SystemSpec::is_network() const { return type == "network"; }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ConfigError("complex value must be a number or [re, im]");
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Mat matrix_from_json(const Json& j) {
    auto real_part = [](const Json& rows) {
        if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
            throw ConfigError("matrix must be a non-empty array of rows");
        }
        const auto r = static_cast<Index>(rows.size());
        const auto c = static_cast<Index>(rows[0].size());
        Eigen::MatrixXd m(r, c);
        for (Index i = 0; i < r; ++i) {
            const Json& row = rows[static_cast<size_t>(i)];
            if (!row.is_array() || static_cast<Index>(row.size()) != c) {
                throw ConfigError("matrix rows must have equal length");
            }
            for (Index k = 0; k < c; ++k) {
                if (!row[static_cast<size_t>(k)].is_number()) {
                    throw ConfigError("matrix entries must be numbers");
                }
                m(i, k) = row[static_cast<size_t>(k)].get<double>();
            }
        }
        return m;
    };
    if (j.is_object()) {
        check_keys(j, {"re", "im"}, "matrix");
        const Eigen::MatrixXd re = real_part(j.at("re"));
        Mat m = re.cast<cplx>();
        if (j.contains("im")) {
            const Eigen::MatrixXd im = real_part(j.at("im"));
            if (im.rows() != re.rows() || im.cols() != re.cols()) {
                throw ConfigError("matrix re and im parts differ in shape");
            }
            m += kI * im.cast<cplx>();
        }
        return m;
    }
    return real_part(j).cast<cplx>();
}

Json matrix_to_json(const Mat& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json rr = Json::array();
        Json ri = Json::array();
        for (Index k = 0; k < m.cols(); ++k) {
            rr.push_back(m(i, k).real());
            ri.push_back(m(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return Json{{"re", re}, {"im", im}};
}

JobConfig parse_config(const Json& doc, JobKind verb) {
    check_keys(doc, {"kind", "system", "physical", "grid", "tol", "probe", "sweep"}, "config");
    JobConfig cfg;
    cfg.source = doc;
    cfg.kind = verb;
    if (doc.contains("kind")) {
        if (!doc.at("kind").is_string()) {
            throw ConfigError("kind must be a string");
        }
        if (job_kind_from_string(doc.at("kind").get<std::string>()) != verb) {
            throw ConfigError("config kind '" + doc.at("kind").get<std::string>() +
                              "' does not match the verb '" + to_string(verb) + "'");
        }
    }

    if (!doc.contains("system")) {
        throw ConfigError("config needs exactly one 'system' section");
    }
    const Json& sys = doc.at("system");
    if (!sys.is_object()) {
        throw ConfigError("system must be an object");
    }
    cfg.system.type = resolve_type(sys);
    const auto it = system_keys().find(cfg.system.type);
    if (it == system_keys().end()) {
        throw ConfigError("unknown system type '" + cfg.system.type + "'");
    }
    cfg.system.params = strip(sys);
    check_keys(cfg.system.params, it->second, "system (" + cfg.system.type + ")");
    // Read every system parameter once so that missing or mistyped values
    // fail here rather than partway through a job.
    if (cfg.system.is_transfer_function()) {
        transfer_function(cfg.system);
        explicit_g22(cfg.system);
    } else if (cfg.system.is_network()) {
        network(cfg.system);
    } else {
        state_space(cfg.system);
    }

    if (doc.contains("physical")) {
        const Json& p = doc.at("physical");
        check_keys(p, {"omega0", "length", "photons", "xc"}, "physical");
        cfg.physical.omega0 = number_or(p, "omega0", 1.0, "physical");
        cfg.physical.length = number_or(p, "length", 1.0, "physical");
        cfg.physical.photons = number_or(p, "photons", 1.0, "physical");
        cfg.physical.xc = number_or(p, "xc", 0.0, "physical");
        try {
            cfg.physical.coupling().validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("physical: ") + e.what());
        }
    }

    if (doc.contains("grid")) {
        const Json& g = doc.at("grid");
        check_keys(g, {"min", "max", "points", "scale"}, "grid");
        if (g.contains("min")) {
            cfg.grid.min = number(g, "min", "grid");
        }
        if (g.contains("max")) {
            cfg.grid.max = number(g, "max", "grid");
        }
        if (g.contains("points")) {
            const Json& n = g.at("points");
            if (!n.is_number_integer() || n.get<long long>() < 1) {
                throw ConfigError("grid.points must be a positive integer");
            }
            cfg.grid.points = static_cast<int>(n.get<long long>());
        }
        if (g.contains("scale")) {
            const Json& s = g.at("scale");
            if (s == "log") {
                cfg.grid.scale = tf::GridScale::logarithmic;
            } else if (s == "linear") {
                cfg.grid.scale = tf::GridScale::linear;
            } else {
                throw ConfigError("grid.scale must be \"log\" or \"linear\"");
            }
        }
    }

    if (doc.contains("tol")) {
        cfg.tol = number(doc, "tol", "config");
        if (!(cfg.tol > 0.0)) {
            throw ConfigError("tol must be positive");
        }
    }

    if (doc.contains("probe")) {
        const Json& p = doc.at("probe");
        check_keys(p, {"mode", "quadrature"}, "probe");
        ProbeSpec probe;
        if (p.contains("mode")) {
            probe.mode = index_from_json(p.at("mode"), "probe.mode");
        }
        if (p.contains("quadrature")) {
            probe.quadrature = quadrature_from_json(p.at("quadrature"));
        }
        cfg.probe = probe;
    }

    if (doc.contains("sweep")) {
        const Json& s = doc.at("sweep");
        check_keys(s, {"parameter", "values", "from", "to", "points"}, "sweep");
        SweepSpec sweep;
        if (!s.contains("parameter") || !s.at("parameter").is_string()) {
            throw ConfigError("sweep.parameter must be a string");
        }
        sweep.parameter = s.at("parameter").get<std::string>();
        if (s.contains("values")) {
            if (!s.at("values").is_array()) {
                throw ConfigError("sweep.values must be an array");
            }
            for (const Json& v : s.at("values")) {
                if (!v.is_number()) {
                    throw ConfigError("sweep.values must be numbers");
                }
                sweep.values.push_back(v.get<double>());
            }
        } else {
            const double lo = number(s, "from", "sweep");
            const double hi = number(s, "to", "sweep");
            const Json& n = s.value("points", Json(11));
            if (!n.is_number_integer() || n.get<long long>() < 1) {
                throw ConfigError("sweep.points must be a positive integer");
            }
            try {
                sweep.values =
                    tf::FrequencyGrid::linear(lo, hi, static_cast<int>(n.get<long long>())).points;
            } catch (const InvalidArgument& e) {
                throw ConfigError(std::string("sweep: ") + e.what());
            }
        }
        if (sweep.values.empty()) {
            throw ConfigError("sweep needs at least one value");
        }
        if (!cfg.system.params.contains(sweep.parameter) ||
            !cfg.system.params.at(sweep.parameter).is_number()) {
            throw ConfigError("sweep.parameter '" + sweep.parameter +
                              "' is not a numeric system key");
        }
        cfg.sweep = sweep;
    }
    if (verb == JobKind::sweep && !cfg.sweep) {
        throw ConfigError("sweep job needs a 'sweep' section");
    }
    if (verb == JobKind::hidden && !cfg.system.is_network()) {
        throw ConfigError("hidden job needs a network system");
    }
    if (verb != JobKind::hidden && cfg.system.is_network()) {
        throw ConfigError("network systems are only accepted by the hidden job");
    }
    if (verb == JobKind::synth && !cfg.system.is_transfer_function()) {
        throw ConfigError("synth job needs a transfer-function system");
    }
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path, JobKind verb) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("cannot parse config '" + path.string() + "': " + e.what());
    }
    return parse_config(doc, verb);
}

tf::PoleZeroSpec transfer_function(const SystemSpec& spec) {
    const Json& p = spec.params;
    const std::string where = "system (" + spec.type + ")";
    if (spec.type == "first_order") {
        return models::first_order_tf(number(p, "alpha", where), number(p, "beta", where));
    }
    if (spec.type == "second_order") {
        return models::second_order_tf(number(p, "a1", where), number(p, "b1", where),
                                       number(p, "a2", where), number(p, "b2", where));
    }
    if (spec.type == "expander") {
        return models::expander_tf(number(p, "gamma", where), number(p, "chi", where),
                                   number(p, "omega_s", where));
    }
    if (spec.type == "pole_zero") {
        return rational_from_json(p, where);
    }
    throw ConfigError("system type '" + spec.type + "' is not a transfer function");
}

std::optional<tf::RationalFunction> explicit_g22(const SystemSpec& spec) {
    if (spec.type != "pole_zero" || !spec.params.contains("g22")) {
        return std::nullopt;
    }
    const Json& g = spec.params.at("g22");
    check_keys(g, {"zeros", "poles", "gain"}, "system.g22");
    return rational_from_json(g, "system.g22");
}

ss::StateSpace state_space(const SystemSpec& spec) {
    const Json& p = spec.params;
    const std::string where = "system (" + spec.type + ")";
    if (spec.is_transfer_function()) {
        return realize::make_physically_realizable(tf::build_quadrature_tf(transfer_function(spec)));
    }
    if (spec.type == "squeezer") {
        return models::internal_squeezer(number(p, "gamma", where), number(p, "chi", where));
    }
    if (spec.type == "cavity") {
        return models::tuned_cavity(number(p, "gamma", where));
    }
    if (spec.type == "statespace") {
        ss::StateSpace s;
        for (const char* k : {"a", "b", "c", "d"}) {
            if (!p.contains(k)) {
                throw ConfigError(where + " is missing '" + k + "'");
            }
        }
        s.a = matrix_from_json(p.at("a"));
        s.b = matrix_from_json(p.at("b"));
        s.c = matrix_from_json(p.at("c"));
        s.d = matrix_from_json(p.at("d"));
        const Json pic = p.value("picture", Json("sideband"));
        if (pic == "sideband") {
            s.picture = ss::Picture::sideband;
        } else if (pic == "quadrature") {
            s.picture = ss::Picture::quadrature;
        } else {
            throw ConfigError("statespace.picture must be \"sideband\" or \"quadrature\"");
        }
        try {
            s.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(where + ": " + e.what());
        }
        return s;
    }
    throw ConfigError("system type '" + spec.type + "' has no state space");
}

hidden::ModeNetwork network(const SystemSpec& spec) {
    if (!spec.is_network()) {
        throw ConfigError("system is not a network");
    }
    const Json& p = spec.params;
    const std::string where = "system (network)";
    hidden::ModeNetwork net;
    net.gamma = number(p, "gamma", where);
    const cplx g = complex_or(p, "g", 0.0);
    net.g_b = complex_or(p, "g_b", 0.0);
    net.g_bdag = complex_or(p, "g_bdag", g);
    net.g_c = complex_or(p, "g_c", g);
    net.g_cdag = complex_or(p, "g_cdag", 0.0);
    if (p.contains("shift") && (p.contains("d_chain") || p.contains("e_chain"))) {
        throw ConfigError("network 'shift' cannot be combined with explicit chains");
    }
    if (p.contains("d_chain")) {
        net.d_chain = chain_from_json(p.at("d_chain"), "system.d_chain");
    }
    if (p.contains("e_chain")) {
        net.e_chain = chain_from_json(p.at("e_chain"), "system.e_chain");
    }
    if (p.contains("signal")) {
        const Json& s = p.at("signal");
        check_keys(s, {"mode", "quadrature", "strength"}, "system.signal");
        if (s.contains("mode")) {
            net.signal.mode = index_from_json(s.at("mode"), "signal.mode");
        }
        if (s.contains("quadrature")) {
            net.signal.quadrature = quadrature_from_json(s.at("quadrature"));
        }
        net.signal.strength = number_or(s, "strength", 1.0, "system.signal");
    }
    if (p.contains("shift")) {
        net = net.with_shift(number(p, "shift", where));
    }
    try {
        net.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("malformed network: ") + e.what());
    }
    return net;
}

SystemSpec with_parameter(const SystemSpec& spec, const std::string& name, double value) {
    SystemSpec out = spec;
    if (!out.params.contains(name) || !out.params.at(name).is_number()) {
        throw ConfigError("'" + name + "' is not a numeric system key");
    }
    out.params[name] = value;
    return out;
}

tf::FrequencyGrid make_grid(const GridSpec& spec, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        scale = 1.0;
    }
    const int n = spec.points.value_or(400);
    try {
        if (spec.scale == tf::GridScale::linear) {
            return tf::FrequencyGrid::linear(spec.min.value_or(0.0), spec.max.value_or(1e3 * scale),
                                             n);
        }
        return tf::FrequencyGrid::logarithmic(spec.min.value_or(1e-3 * scale),
                                              spec.max.value_or(1e3 * scale), n);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

double natural_scale(const ss::StateSpace& sys) {
    if (sys.states() == 0) {
        return 1.0;
    }
    const Eigen::ComplexEigenSolver<Mat> es(sys.a, false);
    double s = 0.0;
    for (Index k = 0; k < es.eigenvalues().size(); ++k) {
        s = std::max(s, std::abs(es.eigenvalues()(k)));
    }
    return s > 0.0 ? s : 1.0;
}

}  // namespace lindet::cli
