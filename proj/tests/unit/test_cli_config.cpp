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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "lindet/cli/config.hpp"
#include "lindet/models.hpp"
#include "lindet/physical_realization.hpp"

namespace lindet::cli {
namespace {

const std::filesystem::path kConfigDir{LINDET_CONFIG_DIR};

JobConfig parse(const char* text, JobKind verb) { return parse_config(Json::parse(text), verb); }

TEST(JobKind, StringRoundTrip) {
    for (JobKind k : {JobKind::synth, JobKind::check, JobKind::sens, JobKind::hidden,
                      JobKind::sweep}) {
        EXPECT_EQ(job_kind_from_string(to_string(k)), k);
    }
    EXPECT_EQ(job_kind_from_string("sensitivity"), JobKind::sens);
    EXPECT_THROW(job_kind_from_string("fit"), ConfigError);
}

TEST(ParseConfig, OrderShorthand) {
    const JobConfig c = parse(R"({"system": {"order": 1, "alpha": 2, "beta": 1}})", JobKind::synth);
    EXPECT_EQ(c.system.type, "first_order");
    EXPECT_TRUE(c.system.is_transfer_function());
    const auto rf = transfer_function(c.system);
    EXPECT_EQ(rf.zeros[0], cplx(-2.0));
    EXPECT_EQ(rf.poles[0], cplx(1.0));

    const JobConfig c2 = parse(
        R"({"system": {"order": 2, "a1": -0.5, "b1": -0.3, "a2": 1.2, "b2": 0.4}})", JobKind::check);
    EXPECT_EQ(c2.system.type, "second_order");
}

TEST(ParseConfig, Defaults) {
    const JobConfig c = parse(R"({"system": {"type": "cavity", "gamma": 1}})", JobKind::sens);
    EXPECT_EQ(c.kind, JobKind::sens);
    EXPECT_DOUBLE_EQ(c.tol, 1e-10);
    EXPECT_DOUBLE_EQ(c.physical.photons, 1.0);
    EXPECT_FALSE(c.grid.min.has_value());
    EXPECT_FALSE(c.probe.has_value());
}

TEST(ParseConfig, FullDocument) {
    const JobConfig c = parse(R"({
        "kind": "sens",
        "system": {"type": "squeezer", "gamma": 2, "chi": 1},
        "physical": {"omega0": 3, "length": 2, "photons": 8, "xc": 1e-3},
        "grid": {"min": 0.1, "max": 10, "points": 5, "scale": "linear"},
        "tol": 1e-8,
        "probe": {"mode": 0, "quadrature": "phase"}
    })",
                              JobKind::sens);
    EXPECT_DOUBLE_EQ(*c.grid.min, 0.1);
    EXPECT_EQ(*c.grid.points, 5);
    EXPECT_EQ(c.grid.scale, tf::GridScale::linear);
    EXPECT_DOUBLE_EQ(c.tol, 1e-8);
    ASSERT_TRUE(c.probe.has_value());
    EXPECT_EQ(c.probe->quadrature, sens::Quadrature::phase);
    // kappa = 3 sqrt(16) / 2.
    EXPECT_DOUBLE_EQ(c.physical.coupling().kappa(), 6.0);
    EXPECT_DOUBLE_EQ(c.physical.xc, 1e-3);
}

TEST(ParseConfig, SweepValues) {
    const JobConfig c = parse(R"({
        "system": {"type": "squeezer", "gamma": 1, "chi": 0},
        "sweep": {"parameter": "chi", "from": 0, "to": 1, "points": 6}
    })",
                              JobKind::sweep);
    ASSERT_TRUE(c.sweep.has_value());
    ASSERT_EQ(c.sweep->values.size(), 6u);
    EXPECT_DOUBLE_EQ(c.sweep->values.front(), 0.0);
    EXPECT_NEAR(c.sweep->values[1], 0.2, 1e-15);
    EXPECT_DOUBLE_EQ(c.sweep->values.back(), 1.0);
    const SystemSpec moved = with_parameter(c.system, "chi", 0.4);
    EXPECT_DOUBLE_EQ(moved.params["chi"].get<double>(), 0.4);
    EXPECT_THROW(with_parameter(c.system, "omega_s", 1.0), ConfigError);
}

TEST(ParseConfig, RejectsBadDocuments) {
    const char* bad[] = {
        R"([1, 2])",
        R"({"system": {"type": "cavity", "gamma": 1}, "colour": 3})",
        R"({"kind": "check", "system": {"type": "cavity", "gamma": 1}})",
        R"({"system": {"type": "warp_drive"}})",
        R"({"system": {"type": "first_order", "alpha": 1}})",
        R"({"system": {"type": "first_order", "alpha": "x", "beta": 1}})",
        R"({"system": {"type": "cavity", "gamma": 1}, "grid": {"points": 0}})",
        R"({"system": {"type": "cavity", "gamma": 1}, "grid": {"scale": "cubic"}})",
        R"({"system": {"type": "cavity", "gamma": 1}, "tol": -1})",
        R"({"system": {"type": "cavity", "gamma": 1}, "physical": {"photons": -3}})",
        R"({"system": {"type": "statespace", "a": [[1]], "b": [[1]], "c": [[1]]}})",
        R"({"system": {"type": "pole_zero", "zeros": [-1], "poles": [2], "gain": "k"}})",
    };
    for (const char* doc : bad) {
        EXPECT_THROW(parse(doc, JobKind::synth), ConfigError) << doc;
    }
}

TEST(ParseConfig, VerbAndSystemMustAgree) {
    EXPECT_THROW(parse(R"({"system": {"type": "network", "gamma": 1, "g": 0.5}})", JobKind::sens),
                 ConfigError);
    EXPECT_THROW(parse(R"({"system": {"type": "cavity", "gamma": 1}})", JobKind::hidden),
                 ConfigError);
    EXPECT_THROW(parse(R"({"system": {"type": "cavity", "gamma": 1}})", JobKind::synth),
                 ConfigError);
    EXPECT_NO_THROW(parse(R"({"system": {"type": "cavity", "gamma": 1}})", JobKind::check));
    EXPECT_THROW(parse(R"({"system": {"type": "cavity", "gamma": 1}})", JobKind::sweep),
                 ConfigError);
}

TEST(Network, ShorthandAndChains) {
    const JobConfig c = parse(R"({"system": {"type": "network", "gamma": 2, "g": 0.5}})",
                              JobKind::hidden);
    EXPECT_TRUE(c.system.is_network());
    const hidden::ModeNetwork n = network(c.system);
    EXPECT_DOUBLE_EQ(n.gamma, 2.0);
    EXPECT_EQ(n.g_bdag, cplx(0.5));
    EXPECT_EQ(n.g_c, cplx(0.5));
    EXPECT_EQ(n.g_b, cplx(0.0));
    EXPECT_EQ(n.modes(), 3);

    const JobConfig s = parse(
        R"({"system": {"type": "network", "gamma": 1, "g": 0.5, "shift": 2}})", JobKind::hidden);
    EXPECT_EQ(network(s.system).modes(), 5);

    const JobConfig ch = parse(R"({"system": {"type": "network", "gamma": 1, "g_b": [0.1, 0.2],
        "d_chain": {"g": [0.3, [0, 1]], "g_dag": [0, 0], "bs": [[0, 0.5], [0.5, 0]]}}})",
                               JobKind::hidden);
    const hidden::ModeNetwork nc = network(ch.system);
    EXPECT_EQ(nc.g_b, cplx(0.1, 0.2));
    ASSERT_EQ(nc.d_chain.size(), 2);
    EXPECT_EQ(nc.d_chain.g[1], cplx(0.0, 1.0));
    EXPECT_EQ(nc.modes(), 5);
}

TEST(Network, MalformedIsConfigErrorAtParse) {
    EXPECT_THROW(parse(R"({"system": {"type": "network", "gamma": 1,
        "d_chain": {"g": [0.3, 0.2], "g_dag": [0, 0], "bs": [[1, 0.5], [0.5, 0]]}}})",
                       JobKind::hidden),
                 ConfigError);
    EXPECT_THROW(parse(R"({"system": {"type": "network", "gamma": 1, "shift": 1,
        "d_chain": {"g": [0.3], "g_dag": [0]}}})",
                       JobKind::hidden),
                 ConfigError);
}

TEST(StateSpace, ModelsAndSynthesis) {
    const JobConfig sq = parse(R"({"system": {"type": "squeezer", "gamma": 2, "chi": 1}})",
                               JobKind::check);
    EXPECT_EQ(state_space(sq.system).a, models::internal_squeezer(2.0, 1.0).a);
    const JobConfig fo = parse(R"({"system": {"order": 1, "alpha": 2, "beta": 1}})",
                               JobKind::synth);
    const ss::StateSpace s = state_space(fo.system);
    EXPECT_TRUE(realize::verify_physical(s).passes(1e-10));
}

TEST(StateSpace, ExplicitMatricesRoundTripThroughJson) {
    const ss::StateSpace e = models::quantum_expander(1.0, 0.3, 0.5);
    Json sys{{"type", "statespace"},
             {"picture", "sideband"},
             {"a", matrix_to_json(e.a)},
             {"b", matrix_to_json(e.b)},
             {"c", matrix_to_json(e.c)},
             {"d", matrix_to_json(e.d)}};
    const JobConfig c = parse_config(Json{{"system", sys}}, JobKind::check);
    const ss::StateSpace back = state_space(c.system);
    EXPECT_EQ(back.a, e.a);
    EXPECT_EQ(back.b, e.b);
    EXPECT_EQ(back.c, e.c);
    EXPECT_EQ(back.d, e.d);
    EXPECT_EQ(back.picture, ss::Picture::sideband);
}

TEST(Json, ComplexAndMatrixEncodings) {
    EXPECT_EQ(complex_from_json(Json(1.5)), cplx(1.5));
    EXPECT_EQ(complex_from_json(Json::array({1.0, -2.0})), cplx(1.0, -2.0));
    EXPECT_EQ(complex_from_json(complex_to_json(cplx(0.25, 3.0))), cplx(0.25, 3.0));
    EXPECT_THROW(complex_from_json(Json("one")), ConfigError);
    EXPECT_THROW(complex_from_json(Json::array({1.0, 2.0, 3.0})), ConfigError);

    const Mat real = matrix_from_json(Json::parse("[[1, 2], [3, 4]]"));
    EXPECT_EQ(real(1, 0), cplx(3.0));
    const Mat cx = matrix_from_json(Json::parse(R"({"re": [[1, 0]], "im": [[0, -1]]})"));
    EXPECT_EQ(cx(0, 1), cplx(0.0, -1.0));
    EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]")), ConfigError);
    Mat m(2, 3);
    m << cplx(1, 2), 3, cplx(0, -4), 5, 6, cplx(7, 8);
    EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
}

TEST(Grid, DefaultsAndOverrides) {
    const tf::FrequencyGrid d = make_grid(GridSpec{}, 2.0);
    ASSERT_EQ(d.points.size(), 400u);
    EXPECT_NEAR(d.points.front(), 2e-3, 1e-15);
    EXPECT_NEAR(d.points.back(), 2e3, 1e-9);
    GridSpec g;
    g.min = 1.0;
    g.max = 3.0;
    g.points = 3;
    g.scale = tf::GridScale::linear;
    const tf::FrequencyGrid l = make_grid(g, 100.0);
    ASSERT_EQ(l.points.size(), 3u);
    EXPECT_DOUBLE_EQ(l.points[1], 2.0);
}

TEST(NaturalScale, LargestEigenvalueModulus) {
    EXPECT_NEAR(natural_scale(models::tuned_cavity(5.0)), 5.0, 1e-12);
    EXPECT_NEAR(natural_scale(models::internal_squeezer(2.0, 1.0)), 3.0, 1e-12);
}

TEST(LoadConfig, ShippedConfigsParse) {
    EXPECT_NO_THROW(load_config(kConfigDir / "first_order_synth.json", JobKind::synth));
    EXPECT_NO_THROW(load_config(kConfigDir / "squeezer_sens.json", JobKind::sens));
    EXPECT_NO_THROW(load_config(kConfigDir / "pt_hidden.json", JobKind::hidden));
    EXPECT_NO_THROW(load_config(kConfigDir / "squeezer_sweep.json", JobKind::sweep));
    EXPECT_NO_THROW(load_config(kConfigDir / "squeezer_check.json", JobKind::check));
    EXPECT_THROW(load_config(kConfigDir / "malformed.json", JobKind::synth), ConfigError);
    EXPECT_THROW(load_config(kConfigDir / "does_not_exist.json", JobKind::synth), ConfigError);
}

}  // namespace
}  // namespace lindet::cli
