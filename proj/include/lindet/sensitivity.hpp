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

// Quantum Cramer-Rao sensitivity of a probe quadrature inside a linear
// detector.
//
// The probe F = kappa * q, with q an internal quadrature of one mode and
// kappa = w0 sqrt(2N) / L, couples linearly to the signal. With vacuum inputs
// (unit spectral density per input quadrature) the normalized probe spectrum
// is s(W) = sum over input quadratures of |G_q(W)|^2, and
//
//     sigma_NN = 2N int_0^inf s(W) dW / 2pi,   S_FF = kappa^2 s,
//     sigma_xx >= hbar^2 / S_FF,   SNR <= (w0^2 |x_c|^2 / L^2) sigma_NN.
//
// Internal computation uses hbar = 1.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lindet/common.hpp"
#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::sens {

enum class Quadrature { amplitude, phase };

std::string to_string(Quadrature q);

struct ProbeCoupling {
    double carrier_frequency = 1.0;  // w0, rad/s
    double cavity_length = 1.0;      // L, m
    double photons = 1.0;            // N
    double hbar = 1.0;

    double kappa() const;
    void validate() const;
};

// Row of V (-iW - A)^-1 B V^dag for the chosen internal quadrature: its
// entries are the responses to the amplitude and phase input quadratures.
RowVec internal_mode_row(const ss::StateSpace& sys, Index mode, Quadrature q, double omega);

// Response of the chosen internal quadrature to the same input quadrature.
cplx internal_mode_tf(const ss::StateSpace& sys, Index mode, Quadrature q, double omega);

// |g|^2 pointwise (S_uu = 1).
std::vector<double> probe_spectrum(const std::vector<cplx>& g_uf);

struct IntegratorConfig {
    double relative_tolerance = 1e-10;
    int max_depth = 15;
    double range_factor = 1e3;  // upper limit = range_factor * max |eigenvalue|
};

struct PhotonVariance {
    double value = 0.0;  // photons^2, +inf when divergent
    bool diverges = false;
    bool near_divergence = false;
    std::optional<double> divergence_frequency;  // rad/s
    bool stable = true;
    double error_estimate = 0.0;
};

PhotonVariance photon_variance(const ss::StateSpace& sys, Index mode, Quadrature q,
                               const ProbeCoupling& coupling, const IntegratorConfig& cfg = {});

// hbar^2 / (kappa^2 s) for a normalized spectrum s; +inf where s = 0.
std::vector<double> qcrb_bound(const std::vector<double>& s_ff, const ProbeCoupling& coupling);

struct SensitivityReport {
    Index mode = 0;
    Quadrature quadrature = Quadrature::amplitude;
    std::vector<double> omega;
    std::vector<double> abs_g_uf;  // kappa sqrt(s), so s_ff = abs_g_uf^2
    std::vector<double> s_ff;      // kappa^2 s
    std::vector<double> qcrb;      // hbar^2 / s_ff
    double sigma_nn = 0.0;
    double snr_bound = 0.0;
    bool diverges = false;
    bool near_divergence = false;
    std::optional<double> divergence_frequency;
};

SensitivityReport sensitivity_report(const ss::StateSpace& sys, Index mode, Quadrature q,
                                     const ProbeCoupling& coupling, const tf::FrequencyGrid& grid,
                                     double xc = 0.0, const IntegratorConfig& cfg = {});

double snr_flat_signal(const SensitivityReport& report, const ProbeCoupling& coupling, double xc);

struct ProbeCandidate {
    Index mode = 0;
    Quadrature quadrature = Quadrature::amplitude;
    PhotonVariance variance;
};

struct OptimalProbe {
    Index mode = 0;
    Quadrature quadrature = Quadrature::amplitude;
    SensitivityReport report;
    // Coupled candidates, best first; uncoupled quadratures are left out.
    std::vector<ProbeCandidate> ranking;
    // All divergent candidates, if any.
    std::vector<ProbeCandidate> divergent;
};

OptimalProbe optimal_probe_mode(const ss::StateSpace& sys, const ProbeCoupling& coupling,
                                const tf::FrequencyGrid& grid, const IntegratorConfig& cfg = {});

struct ScanPoint {
    double parameter = 0.0;
    bool diverges = false;
    std::optional<double> divergence_frequency;
};

using SystemFamily = std::function<ss::StateSpace(double)>;

// Flags parameters at which some internal quadrature response has a pole on
// the real frequency axis.
std::vector<ScanPoint> divergence_scan(const SystemFamily& family,
                                       const std::vector<double>& parameters);

std::string csv_header();

}  // namespace lindet::sens
