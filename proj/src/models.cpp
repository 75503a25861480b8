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

#include "lindet/models.hpp"

#include <cmath>

namespace lindet::models {

namespace {

// Roots of s^2 - sum s + product.
std::pair<cplx, cplx> quadratic_roots(double sum, double product) {
    const cplx disc = std::sqrt(cplx(sum * sum - 4.0 * product, 0.0));
    return {(sum + disc) / 2.0, (sum - disc) / 2.0};
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

tf::PoleZeroSpec first_order_tf(double alpha, double beta) {
    tf::PoleZeroSpec rf;
    rf.zeros = {-alpha};
    rf.poles = {beta};
    rf.gain = -1.0;
    return rf;
}

tf::PoleZeroSpec second_order_tf(double a1, double b1, double a2, double b2) {
    tf::PoleZeroSpec rf;
    rf.zeros = {a1, b1};
    rf.poles = {a2, b2};
    rf.gain = 1.0;
    return rf;
}

tf::PoleZeroSpec expander_tf(double gamma, double chi, double omega_s) {
    require_positive(gamma, "gamma");
    require_positive(omega_s, "omega_s");
    const auto [z1, z2] = quadratic_roots(chi - gamma, omega_s * omega_s);
    const auto [p1, p2] = quadratic_roots(chi + gamma, omega_s * omega_s);
    tf::PoleZeroSpec rf;
    rf.zeros = {z1, z2};
    rf.poles = {p1, p2};
    rf.gain = 1.0;
    return rf;
}

ExpanderParameters expander_parameters(double a1, double b1, double a2, double b2) {
    ExpanderParameters p;
    p.gamma = (a2 + b2 - a1 - b1) / 2.0;
    p.chi = (a1 + b1 + a2 + b2) / 2.0;
    if (a1 * b1 < 0.0) {
        throw InvalidArgument("zero product must be non-negative for a real sloshing rate");
    }
    p.omega_s = std::sqrt(a1 * b1);
    p.dc_mismatch = a1 * b1 - a2 * b2;
    return p;
}

ss::StateSpace tuned_cavity(double gamma) { return internal_squeezer(gamma, 0.0); }

ss::StateSpace internal_squeezer(double gamma, double chi) {
    require_positive(gamma, "gamma");
    const double k = std::sqrt(2.0 * gamma);
    ss::StateSpace s;
    s.picture = ss::Picture::sideband;
    s.a = Mat(2, 2);
    s.a << -gamma, chi, chi, -gamma;
    s.b = k * Mat::Identity(2, 2);
    s.c = -k * Mat::Identity(2, 2);
    s.d = Mat::Identity(2, 2);
    return s;
}

ss::StateSpace quantum_expander(double gamma, double chi, double omega_s) {
    require_positive(gamma, "gamma");
    const double k = std::sqrt(2.0 * gamma);
    const cplx w = kI * omega_s;
    ss::StateSpace s;
    s.picture = ss::Picture::sideband;
    s.a = Mat::Zero(4, 4);
    s.a(0, 2) = -w;
    s.a(1, 3) = w;
    s.a(2, 0) = -w;
    s.a(3, 1) = w;
    s.a(2, 2) = -gamma;
    s.a(3, 3) = -gamma;
    s.a(2, 3) = -chi;
    s.a(3, 2) = -chi;
    s.b = Mat::Zero(4, 2);
    s.b(2, 0) = k;
    s.b(3, 1) = k;
    s.c = Mat::Zero(2, 4);
    s.c(0, 2) = -k;
    s.c(1, 3) = -k;
    s.d = Mat::Identity(2, 2);
    return s;
}

}  // namespace lindet::models
