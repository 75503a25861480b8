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

// Named detector configurations used throughout the toolkit.

#pragma once

#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::models {

// g11 = (alpha + iW) / (beta - iW).
tf::PoleZeroSpec first_order_tf(double alpha, double beta);

// g11 = (iW - a1)(iW - b1) / ((iW - a2)(iW - b2)).
tf::PoleZeroSpec second_order_tf(double a1, double b1, double a2, double b2);

// Second-order spec of a detection cavity (bandwidth gamma, internal
// squeezing chi) coupled to an arm mode at sloshing rate omega_s.
tf::PoleZeroSpec expander_tf(double gamma, double chi, double omega_s);

struct ExpanderParameters {
    double gamma = 0.0;
    double chi = 0.0;
    double omega_s = 0.0;
    // Product of the zeros minus product of the poles; zero means no DC gain.
    double dc_mismatch = 0.0;
};

// Inverse of expander_tf for real a1, b1, a2, b2.
ExpanderParameters expander_parameters(double a1, double b1, double a2, double b2);

// Sideband-picture realizations (states (a, a^dag), ports (a, a^dag)).
ss::StateSpace tuned_cavity(double gamma);
ss::StateSpace internal_squeezer(double gamma, double chi);
// Arm mode first, detection (port) mode second.
ss::StateSpace quantum_expander(double gamma, double chi, double omega_s);

}  // namespace lindet::models
