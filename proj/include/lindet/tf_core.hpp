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

// Rational transfer functions in the two-photon quadrature picture.
//
// A scalar transfer function is stored in pole-zero form
//
//     g(W) = gain * prod(iW - z_j) / prod(iW - p_k),
//
// so a stable pole sits at Re p > 0 in this parameterization (the state-space
// eigenvalue is -p).

#pragma once

#include <vector>

#include "lindet/common.hpp"

namespace lindet::tf {

struct RationalFunction {
    std::vector<cplx> zeros;
    std::vector<cplx> poles;
    cplx gain{1.0, 0.0};

    // Throws InvalidArgument on shared roots, ImproperTransferFunction when
    // there are more zeros than poles.
    void validate() const;
    bool is_constant() const { return zeros.empty() && poles.empty(); }
};

using PoleZeroSpec = RationalFunction;

struct QuadratureTransferMatrix {
    RationalFunction g11;
    RationalFunction g22;

    // diag(g11(W), g22(W)).
    Mat2 at(double omega) const;
};

enum class GridScale { linear, logarithmic };

struct FrequencyGrid {
    std::vector<double> points;
    GridScale scale = GridScale::logarithmic;

    static FrequencyGrid linear(double lo, double hi, int n);
    static FrequencyGrid logarithmic(double lo, double hi, int n);
    // 400 log points over [1e-3, 1e3] * max(|pole|) (1 when there are none).
    static FrequencyGrid default_for(const QuadratureTransferMatrix& g);

    void validate() const;
};

// [[0, i], [-i, 0]].
const Mat2& theta();

// gain * prod(iW - z) / prod(iW - p). Throws PoleHit within
// 1e-9 * (1 + |p|) of a pole.
cplx evaluate_rational(const RationalFunction& rf, cplx omega);

// zeros {-conj p}, poles {-conj z}, gain (-1)^(np - nz) / conj(k): equals
// 1 / conj(rf(W)) on the real axis.
RationalFunction symplectic_partner(const RationalFunction& rf);

// Completes g11 with the g22 that the symplectic condition demands:
// zeros {-conj p}, poles {-conj z}, gain (-1)^(np - nz) / conj(k).
QuadratureTransferMatrix build_quadrature_tf(const PoleZeroSpec& g11);

struct SymplecticCheck {
    bool pass = false;
    double max_residual = 0.0;
};

// max over the grid of || G(-W)^dag Theta G(-W) - Theta ||.
SymplecticCheck check_symplectic_realizability(const QuadratureTransferMatrix& g,
                                               const FrequencyGrid& grid, double tol = 1e-10);

// G(-W) = conj(G(W)) on the real axis, checked on polynomial coefficients.
bool check_realness(const QuadratureTransferMatrix& g, double tol = 1e-10);
bool check_realness(const RationalFunction& rf, double tol = 1e-10);

int free_parameter_count(int order);

enum class Conversion { quadrature_to_sideband, sideband_to_quadrature };

Mat2 picture_convert(const Mat2& m, Conversion direction);

// Monic polynomial coefficients (highest degree first) of prod(s - r).
std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots);

}  // namespace lindet::tf
