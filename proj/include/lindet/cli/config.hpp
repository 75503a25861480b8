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

// Job configuration for the lindet command-line tool.
//
// A config is one JSON document:
//
//   {
//     "kind": "synth",                      optional, must match the verb
//     "system": {"type": "first_order", "alpha": 2, "beta": 1},
//     "physical": {"omega0": 1.8e15, "length": 4000, "photons": 1e6, "xc": 0},
//     "grid": {"min": 1e-3, "max": 1e3, "points": 400, "scale": "log"},
//     "tol": 1e-10,
//     "probe": {"mode": 0, "quadrature": "amplitude"},
//     "sweep": {"parameter": "chi", "from": 0, "to": 1, "points": 11}
//   }
//
// System types and their keys (complex numbers as a number or [re, im]):
//
//   first_order   alpha, beta
//   second_order  a1, b1, a2, b2
//   expander      gamma, chi, omega_s
//   pole_zero     zeros, poles, gain, g22 (optional {zeros, poles, gain})
//   squeezer      gamma, chi
//   cavity        gamma
//   statespace    a, b, c, d, picture ("sideband" | "quadrature"); matrices
//                 as nested real arrays or {"re": [[..]], "im": [[..]]}
//   network       gamma, g_b, g_bdag, g_c, g_cdag, shift, d_chain, e_chain,
//                 signal {mode, quadrature, strength}; chains are
//                 {g, g_dag, bs, sq}
//
// "order": 1 with alpha/beta (or "order": 2 with a1..b2) may replace "type".

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lindet/common.hpp"
#include "lindet/hidden_modes.hpp"
#include "lindet/sensitivity.hpp"
#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::cli {

using Json = nlohmann::ordered_json;

// Malformed or inconsistent configuration.
class ConfigError : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

enum class JobKind { synth, check, sens, hidden, sweep };

std::string to_string(JobKind kind);
JobKind job_kind_from_string(const std::string& s);

struct GridSpec {
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> points;
    tf::GridScale scale = tf::GridScale::logarithmic;
};

struct PhysicalSpec {
    double omega0 = 1.0;  // rad/s
    double length = 1.0;  // m
    double photons = 1.0;
    double xc = 0.0;  // m

    sens::ProbeCoupling coupling() const;
};

struct SystemSpec {
    std::string type;
    Json params;  // the "system" object as given

    bool is_transfer_function() const;
    bool is_network() const;
};

struct ProbeSpec {
    Index mode = 0;
    sens::Quadrature quadrature = sens::Quadrature::amplitude;
};

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
};

struct JobConfig {
    JobKind kind = JobKind::synth;
    SystemSpec system;
    PhysicalSpec physical;
    GridSpec grid;
    double tol = 1e-10;
    std::optional<ProbeSpec> probe;
    std::optional<SweepSpec> sweep;
    Json source;  // echoed into reports
};

// Throws ConfigError.
JobConfig parse_config(const Json& doc, JobKind verb);
JobConfig load_config(const std::filesystem::path& path, JobKind verb);

// g11 of a transfer-function system.
tf::PoleZeroSpec transfer_function(const SystemSpec& spec);

// Explicit g22 when the config gives one.
std::optional<tf::RationalFunction> explicit_g22(const SystemSpec& spec);

// State space of any non-network system; transfer functions are synthesized.
ss::StateSpace state_space(const SystemSpec& spec);

hidden::ModeNetwork network(const SystemSpec& spec);

// Copy of the spec with a numeric system parameter replaced.
SystemSpec with_parameter(const SystemSpec& spec, const std::string& name, double value);

// Grid from the spec; unset bounds default to [1e-3, 1e3] * natural_scale and
// 400 points.
tf::FrequencyGrid make_grid(const GridSpec& spec, double natural_scale);

// Natural frequency scale of a system: max |eigenvalue| of its drift matrix.
double natural_scale(const ss::StateSpace& sys);

cplx complex_from_json(const Json& j);
Json complex_to_json(cplx z);
Mat matrix_from_json(const Json& j);
Json matrix_to_json(const Mat& m);

}  // namespace lindet::cli
