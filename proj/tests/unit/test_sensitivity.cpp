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
#include <random>

#include "fixtures.hpp"
#include "lindet/models.hpp"
#include "lindet/physical_realization.hpp"
#include "lindet/sensitivity.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::sens {
namespace {

constexpr double kSigmaTol = 1e-6;

ProbeCoupling photons(double n) {
    ProbeCoupling pc;
    pc.photons = n;
    return pc;
}

// Squeezer amplitude quadrature: sqrt(2 gamma) / (gamma - chi - iW).
cplx squeezer_amplitude(double gamma, double chi, double w) {
    return std::sqrt(2.0 * gamma) / (gamma - chi - kI * w);
}

TEST(InternalModeTf, SqueezerQuadraturesClosedForm) {
    const double gamma = 1.2;
    const double chi = 0.4;
    const ss::StateSpace s = models::internal_squeezer(gamma, chi);
    for (double w : {0.0, 0.3, 2.0, 50.0}) {
        EXPECT_LT(std::abs(internal_mode_tf(s, 0, Quadrature::amplitude, w) -
                           squeezer_amplitude(gamma, chi, w)),
                  1e-14);
        EXPECT_LT(std::abs(internal_mode_tf(s, 0, Quadrature::phase, w) -
                           squeezer_amplitude(gamma, -chi, w)),
                  1e-14);
        const RowVec row = internal_mode_row(s, 0, Quadrature::amplitude, w);
        EXPECT_LT(std::abs(row(1)), 1e-15);
    }
    EXPECT_THROW(internal_mode_tf(s, 1, Quadrature::amplitude, 0.0), InvalidArgument);
}

TEST(InternalModeTf, ExpanderRowsMatchHandDerived) {
    const double gamma = 0.9;
    const double chi = 0.25;
    const double ws = 0.6;
    const ss::StateSpace e = models::quantum_expander(gamma, chi, ws);
    for (double w : {0.05, 0.6, 3.0}) {
        const RowVec arm_x = internal_mode_row(e, 0, Quadrature::amplitude, w);
        const RowVec port_y = internal_mode_row(e, 1, Quadrature::phase, w);
        EXPECT_LT(std::abs(arm_x(1) - fixtures::expander_arm_amplitude(gamma, chi, ws, w)), 1e-13);
        EXPECT_LT(std::abs(port_y(1) - fixtures::expander_port_phase(gamma, chi, ws, w)), 1e-13);
        EXPECT_LT(std::abs(arm_x(0)) + std::abs(port_y(0)), 1e-14);
    }
}

TEST(ProbeSpectrum, IsModulusSquared) {
    const auto s = probe_spectrum({cplx(3.0, 4.0), cplx(0.0, -2.0), 0.0});
    ASSERT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s[0], 25.0);
    EXPECT_DOUBLE_EQ(s[1], 4.0);
    EXPECT_DOUBLE_EQ(s[2], 0.0);
}

TEST(PhotonVariance, SqueezerClosedFormBothQuadratures) {
    // sigma = N gamma / |gamma - chi| (amplitude), N gamma / (gamma + chi) (phase).
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> g(0.05, 20.0);
    std::uniform_real_distribution<double> r(-0.9, 0.9);
    const double n = 1e4;
    for (int trial = 0; trial < 15; ++trial) {
        const double gamma = g(rng);
        const double chi = r(rng) * gamma;
        const ss::StateSpace s = models::internal_squeezer(gamma, chi);
        const PhotonVariance amp = photon_variance(s, 0, Quadrature::amplitude, photons(n));
        const PhotonVariance ph = photon_variance(s, 0, Quadrature::phase, photons(n));
        const double want_amp = n * gamma / std::abs(gamma - chi);
        const double want_ph = n * gamma / (gamma + chi);
        EXPECT_NEAR(amp.value / want_amp, 1.0, kSigmaTol);
        EXPECT_NEAR(ph.value / want_ph, 1.0, kSigmaTol);
        EXPECT_FALSE(amp.diverges);
        EXPECT_TRUE(amp.stable);
    }
}

TEST(PhotonVariance, ScalesLinearlyWithPhotonNumber) {
    const ss::StateSpace s = models::internal_squeezer(1.0, 0.3);
    const double v1 = photon_variance(s, 0, Quadrature::amplitude, photons(1.0)).value;
    const double v2 = photon_variance(s, 0, Quadrature::amplitude, photons(1e8)).value;
    EXPECT_NEAR(v2 / v1, 1e8, 1e8 * 1e-9);
}

TEST(PhotonVariance, TunedCavityIsBandwidthIndependent) {
    for (double gamma : {0.01, 1.0, 300.0}) {
        const double v =
            photon_variance(models::tuned_cavity(gamma), 0, Quadrature::amplitude, photons(5.0))
                .value;
        EXPECT_NEAR(v, 5.0, 5.0 * kSigmaTol) << "gamma = " << gamma;
    }
}

TEST(PhotonVariance, ThresholdDiverges) {
    const PhotonVariance v = photon_variance(models::internal_squeezer(2.0, 2.0), 0,
                                             Quadrature::amplitude, photons(1.0));
    EXPECT_TRUE(v.diverges);
    EXPECT_TRUE(std::isinf(v.value));
    ASSERT_TRUE(v.divergence_frequency.has_value());
    EXPECT_NEAR(*v.divergence_frequency, 0.0, 1e-9);
    // The anti-squeezed quadrature stays finite.
    const PhotonVariance ph = photon_variance(models::internal_squeezer(2.0, 2.0), 0,
                                              Quadrature::phase, photons(1.0));
    EXPECT_FALSE(ph.diverges);
    EXPECT_NEAR(ph.value, 0.5, 0.5 * kSigmaTol);
}

TEST(PhotonVariance, LosslessResonanceAtFiniteFrequency) {
    // With chi = gamma the arm amplitude denominator
    // iW (chi - gamma) + ws^2 - W^2 vanishes at W = ws.
    const double ws = 0.7;
    const PhotonVariance v = photon_variance(models::quantum_expander(1.0, 1.0, ws), 0,
                                             Quadrature::amplitude, photons(1.0));
    EXPECT_TRUE(v.diverges);
    ASSERT_TRUE(v.divergence_frequency.has_value());
    EXPECT_NEAR(std::abs(*v.divergence_frequency), ws, 1e-8);
}

TEST(QcrbBound, InverseOfSpectrum) {
    ProbeCoupling pc;
    pc.carrier_frequency = 2.0;
    pc.cavity_length = 4.0;
    pc.photons = 8.0;
    // kappa = 2 sqrt(16) / 4 = 2.
    EXPECT_DOUBLE_EQ(pc.kappa(), 2.0);
    const auto b = qcrb_bound({1.0, 0.25, 0.0}, pc);
    EXPECT_DOUBLE_EQ(b[0], 0.25);
    EXPECT_DOUBLE_EQ(b[1], 1.0);
    EXPECT_TRUE(std::isinf(b[2]));
    EXPECT_THROW(qcrb_bound({-1.0}, pc), InvalidArgument);
    pc.photons = 0.0;
    EXPECT_THROW(pc.validate(), InvalidArgument);
}

TEST(SensitivityReport, ColumnsAreConsistent) {
    const double gamma = 2.0;
    const double chi = 1.0;
    ProbeCoupling pc = photons(1e6);
    pc.carrier_frequency = 3.0;
    pc.cavity_length = 1.5;
    const auto grid = tf::FrequencyGrid::logarithmic(1e-2, 1e2, 50);
    const SensitivityReport r = sensitivity_report(models::internal_squeezer(gamma, chi), 0,
                                                   Quadrature::amplitude, pc, grid, 1e-3);
    ASSERT_EQ(r.omega.size(), 50u);
    ASSERT_EQ(r.abs_g_uf.size(), 50u);
    const double k = pc.kappa();
    for (size_t i = 0; i < r.omega.size(); ++i) {
        const double s = std::norm(squeezer_amplitude(gamma, chi, r.omega[i]));
        EXPECT_NEAR(r.s_ff[i] / (k * k * s), 1.0, 1e-12);
        EXPECT_NEAR(r.abs_g_uf[i] * r.abs_g_uf[i] / r.s_ff[i], 1.0, 1e-12);
        EXPECT_NEAR(r.qcrb[i] * r.s_ff[i], 1.0, 1e-12);
    }
    EXPECT_NEAR(r.sigma_nn / 2e6, 1.0, kSigmaTol);
    const double ratio = pc.carrier_frequency * 1e-3 / pc.cavity_length;
    EXPECT_NEAR(r.snr_bound / (ratio * ratio * r.sigma_nn), 1.0, 1e-12);
    EXPECT_EQ(snr_flat_signal(r, pc, 0.0), 0.0);
}

TEST(OptimalProbe, SqueezerPrefersAmplitude) {
    const auto grid = tf::FrequencyGrid::logarithmic(1e-2, 1e2, 40);
    const OptimalProbe p = optimal_probe_mode(models::internal_squeezer(1.0, 0.5), photons(1.0), grid);
    EXPECT_EQ(p.mode, 0);
    EXPECT_EQ(p.quadrature, Quadrature::amplitude);
    ASSERT_EQ(p.ranking.size(), 2u);
    EXPECT_GT(p.ranking[0].variance.value, p.ranking[1].variance.value);
    EXPECT_TRUE(p.divergent.empty());
}

TEST(OptimalProbe, ExpanderArmAndPortTie) {
    // Arm amplitude and port phase share a denominator.
    const auto grid = tf::FrequencyGrid::logarithmic(1e-2, 1e2, 40);
    const OptimalProbe p =
        optimal_probe_mode(models::quantum_expander(1.0, 0.4, 0.5), photons(1.0), grid);
    ASSERT_EQ(p.ranking.size(), 4u);
    double arm_x = 0.0;
    double port_y = 0.0;
    for (const auto& c : p.ranking) {
        if (c.mode == 0 && c.quadrature == Quadrature::amplitude) {
            arm_x = c.variance.value;
        }
        if (c.mode == 1 && c.quadrature == Quadrature::phase) {
            port_y = c.variance.value;
        }
    }
    EXPECT_NEAR(arm_x / port_y, 1.0, 1e-6);
    EXPECT_NEAR(p.ranking.front().variance.value / arm_x, 1.0, 1e-6);
}

TEST(DivergenceScan, FlagsThresholdOnly) {
    const auto pts = divergence_scan(
        [](double chi) { return models::internal_squeezer(1.0, chi); }, {0.0, 0.5, 0.99, 1.0});
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_FALSE(pts[0].diverges);
    EXPECT_FALSE(pts[1].diverges);
    EXPECT_FALSE(pts[2].diverges);
    EXPECT_TRUE(pts[3].diverges);
    ASSERT_TRUE(pts[3].divergence_frequency.has_value());
    EXPECT_NEAR(*pts[3].divergence_frequency, 0.0, 1e-9);
}

TEST(Csv, HeaderColumns) { EXPECT_EQ(csv_header(), "omega,abs_G_uF,S_FF,qcrb_bound"); }

}  // namespace
}  // namespace lindet::sens
