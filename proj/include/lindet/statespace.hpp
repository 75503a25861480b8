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

// State-space systems xdot = A x + B u, y = C x + D u.
//
// Frequency convention: x(t) ~ exp(-i W t), so
//
//     H(W) = C (-iW I - A)^-1 B + D.
//
// A tuned cavity (A = -g, B = sqrt(2g), C = -sqrt(2g), D = 1) then gives
// (W - ig)/(W + ig).

#pragma once

#include <functional>
#include <vector>

#include "lindet/common.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::ss {

// Which basis the inputs and outputs are written in. Internal states are not
// affected. Sideband ports are ordered (a, a^dag) per field, quadrature ports
// (X, Y) per field.
enum class Picture { quadrature, sideband };

struct StateSpace {
    Mat a;
    Mat b;
    Mat c;
    Mat d;
    Picture picture = Picture::quadrature;

    Index states() const { return a.rows(); }
    Index inputs() const { return d.cols(); }
    Index outputs() const { return d.rows(); }

    // Throws InvalidArgument on non-conformable shapes.
    void validate() const;
};

struct TimeResponse {
    std::vector<double> times;
    Mat natural;  // one row per sample
    Mat forced;   // one row per sample
    double growth_bound = 0.0;
};

Mat frequency_response(const StateSpace& sys, double omega);

// Frequency response converted to the quadrature picture.
Mat quadrature_response(const StateSpace& sys, double omega);

StateSpace canonical_realization(const tf::QuadratureTransferMatrix& g);

// Controllable canonical realization of one scalar entry.
StateSpace canonical_realization(const tf::RationalFunction& rf);

StateSpace minimal_realization(const StateSpace& sys, double tol = 1e-9);

bool is_hurwitz(const Mat& a);

double growth_bound(const Mat& a);

using InputSignal = std::function<Vec(double)>;

// First-order-hold exact discretization on samples t = 0, dt, ..., <= t_end.
TimeResponse time_response(const StateSpace& sys, const Vec& x0, const InputSignal& input,
                           double t_end, double dt);

StateSpace similarity_transform(const StateSpace& sys, const Mat& t);

// max over the grid of min over s in {+1, -1} of || H(W) - s G(W) ||, in the
// quadrature picture.
double tf_distance(const StateSpace& sys, const tf::QuadratureTransferMatrix& g,
                   const tf::FrequencyGrid& grid);

// Same metric between two systems.
double tf_distance(const StateSpace& lhs, const StateSpace& rhs, const tf::FrequencyGrid& grid);

StateSpace to_sideband(const StateSpace& sys);
StateSpace to_quadrature(const StateSpace& sys);

// Orthonormal basis (columns) of the column range of m; singular values below
// tol * max count as zero.
Mat orthonormal_range(const Mat& m, double tol);

}  // namespace lindet::ss
