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

// Closed-form reference systems shared by the unit and acceptance tests.
// Everything here is written out by hand; nothing calls into the library
// beyond plain data types.

#pragma once

#include <cmath>

#include "lindet/common.hpp"
#include "lindet/doubled_basis.hpp"
#include "lindet/statespace.hpp"

namespace lindet::fixtures {

// Canonical-then-minimal internal-squeezer realization in frequency units of
// alpha, Gamma = beta / alpha < 1, sideband ports. Does not satisfy the
// realizability conditions.
inline ss::StateSpace unrealizable_squeezer(double gam) {
    const double g2 = gam * gam;
    const double q = 3.0 + g2;
    const double c1 = std::sqrt(2.0) * std::sqrt(1.0 + g2) * std::abs(gam - 1.0);
    const double quartic = 3.0 + 4.0 * g2 + g2 * g2;
    ss::StateSpace s;
    s.a = Mat(2, 2);
    s.a << -(1.0 + gam) * (1.0 + gam), c1, c1, -2.0 - gam - gam * g2;
    s.a /= q;
    s.b = Mat(2, 2);
    s.b << 0.0, std::sqrt(2.0 / q), 0.5 * std::sqrt(q / (1.0 + g2)),
        (g2 - 1.0) / (2.0 * std::sqrt(quartic));
    s.c = Mat(2, 2);
    s.c << (1.0 + gam) * (1.0 + gam) * std::abs(gam - 1.0) / std::sqrt(2.0 * q),
        2.0 * (1.0 + gam) * (1.0 + g2) / std::sqrt(quartic), (1.0 + gam) * std::sqrt(q / 2.0), 0.0;
    s.d = -Mat::Identity(2, 2);
    s.picture = ss::Picture::sideband;
    return s;
}

// Hermitian solution of the realizability constraint for that system.
inline Mat squeezer_constraint_solution(double gam) {
    const double g2 = gam * gam;
    const double cubic = 3.0 + 3.0 * gam + g2 + gam * g2;
    Mat x(2, 2);
    x << -2.0 / cubic,
        std::sqrt(3.0 + 4.0 * g2 + g2 * g2) * std::abs(gam - 1.0) /
            (std::sqrt(2.0) * (1.0 + g2) * std::pow(3.0 + g2, 1.5)),
        (1.0 - gam) / (std::sqrt(2.0 * (1.0 + g2)) * (3.0 + g2)), 2.0 / cubic;
    return x;
}

// A factor T with T J T^dag = X for the solution above.
inline Mat squeezer_constraint_factor(double gam) {
    const double g2 = gam * gam;
    const double cubic = 3.0 + 3.0 * gam + g2 + gam * g2;
    Mat t(2, 2);
    t << 0.0, std::sqrt(2.0 / cubic), 0.5 * std::sqrt((3.0 + g2) / (1.0 + gam + g2 + gam * g2)),
        (g2 - 1.0) / (2.0 * std::sqrt((1.0 + g2) * cubic));
    return t;
}

// Expander drift in the (arm, port) sideband basis.
inline Mat expander_drift(double gamma, double chi, double ws) {
    Mat a = Mat::Zero(4, 4);
    a(0, 2) = -kI * ws;
    a(1, 3) = kI * ws;
    a(2, 0) = -kI * ws;
    a(3, 1) = kI * ws;
    a(2, 2) = -gamma;
    a(3, 3) = -gamma;
    a(2, 3) = -chi;
    a(3, 2) = -chi;
    return a;
}

// Arm amplitude quadrature response to the phase input quadrature.
inline cplx expander_arm_amplitude(double gamma, double chi, double ws, double w) {
    return std::sqrt(2.0 * gamma) * ws / (kI * w * (chi - gamma) + ws * ws - w * w);
}

// Arm phase quadrature response to the amplitude input quadrature.
inline cplx expander_arm_phase(double gamma, double chi, double ws, double w) {
    return -std::sqrt(2.0 * gamma) * ws / (-kI * w * (gamma + chi) + ws * ws - w * w);
}

// Port-mode responses (diagonal in the quadratures).
inline cplx expander_port_amplitude(double gamma, double chi, double ws, double w) {
    return -kI * std::sqrt(2.0 * gamma) * w / (-kI * w * (gamma + chi) + ws * ws - w * w);
}
inline cplx expander_port_phase(double gamma, double chi, double ws, double w) {
    return -kI * std::sqrt(2.0 * gamma) * w / (kI * w * (chi - gamma) + ws * ws - w * w);
}

// Bare tuned-cavity reflection (W - i gamma)/(W + i gamma).
inline cplx cavity_reflection(double gamma, double w) {
    return (w - kI * gamma) / (w + kI * gamma);
}

}  // namespace lindet::fixtures
