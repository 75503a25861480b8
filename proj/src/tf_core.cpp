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

#include "lindet/tf_core.hpp"

#include <algorithm>
#include <cmath>

#include "lindet/doubled_basis.hpp"

namespace lindet::tf {

namespace {

constexpr double kPoleGuard = 1e-9;
constexpr double kRootMatch = 1e-12;

std::vector<cplx> negated(const std::vector<cplx>& v, bool conjugate) {
    std::vector<cplx> out;
    out.reserve(v.size());
    for (const cplx& x : v) {
        out.push_back(conjugate ? -std::conj(x) : -x);
    }
    return out;
}

std::vector<cplx> concat(std::vector<cplx> a, const std::vector<cplx>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

double max_abs_pole(const RationalFunction& rf) {
    double m = 0.0;
    for (const cplx& p : rf.poles) {
        m = std::max(m, std::abs(p));
    }
    return m;
}

}  // namespace

void RationalFunction::validate() const {
    if (zeros.size() > poles.size()) {
        throw ImproperTransferFunction("rational function has more zeros than poles");
    }
    for (const cplx& z : zeros) {
        for (const cplx& p : poles) {
            if (std::abs(z - p) <= kRootMatch * (1.0 + std::abs(p))) {
                throw InvalidArgument("rational function has a zero coinciding with a pole");
            }
        }
    }
    if (gain == cplx(0.0, 0.0)) {
        throw InvalidArgument("rational function has zero gain");
    }
}

Mat2 QuadratureTransferMatrix::at(double omega) const {
    Mat2 m = Mat2::Zero();
    m(0, 0) = evaluate_rational(g11, omega);
    m(1, 1) = evaluate_rational(g22, omega);
    return m;
}

FrequencyGrid FrequencyGrid::linear(double lo, double hi, int n) {
    if (n < 1 || !(hi >= lo) || (n > 1 && hi == lo)) {
        throw InvalidArgument("linear grid needs n >= 1 and hi > lo");
    }
    FrequencyGrid g;
    g.scale = GridScale::linear;
    g.points.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        g.points[static_cast<size_t>(k)] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    }
    return g;
}

FrequencyGrid FrequencyGrid::logarithmic(double lo, double hi, int n) {
    if (n < 1 || !(lo > 0.0) || !(hi >= lo) || (n > 1 && hi == lo)) {
        throw InvalidArgument("logarithmic grid needs n >= 1 and 0 < lo < hi");
    }
    FrequencyGrid g;
    g.scale = GridScale::logarithmic;
    g.points.resize(static_cast<size_t>(n));
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int k = 0; k < n; ++k) {
        g.points[static_cast<size_t>(k)] = n == 1 ? lo : std::exp(a + (b - a) * k / (n - 1));
    }
    return g;
}

FrequencyGrid FrequencyGrid::default_for(const QuadratureTransferMatrix& g) {
    double s = std::max(max_abs_pole(g.g11), max_abs_pole(g.g22));
    if (s == 0.0) {
        s = 1.0;
    }
    return logarithmic(1e-3 * s, 1e3 * s, 400);
}

void FrequencyGrid::validate() const {
    if (points.empty()) {
        throw InvalidArgument("frequency grid is empty");
    }
    for (size_t k = 1; k < points.size(); ++k) {
        if (!(points[k] > points[k - 1])) {
            throw InvalidArgument("frequency grid must be strictly increasing");
        }
    }
}

const Mat2& theta() {
    static const Mat2 t = [] {
        Mat2 m;
        m << 0.0, kI, -kI, 0.0;
        return m;
    }();
    return t;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (const cplx& r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

cplx evaluate_rational(const RationalFunction& rf, cplx omega) {
    const cplx s = kI * omega;
    cplx den = 1.0;
    for (const cplx& p : rf.poles) {
        const cplx d = s - p;
        if (std::abs(d) < kPoleGuard * (1.0 + std::abs(p))) {
            throw PoleHit("evaluation frequency coincides with a pole");
        }
        den *= d;
    }
    cplx num = rf.gain;
    for (const cplx& z : rf.zeros) {
        num *= s - z;
    }
    return num / den;
}

QuadratureTransferMatrix build_quadrature_tf(const PoleZeroSpec& g11) {
    g11.validate();
    if (g11.zeros.size() != g11.poles.size()) {
        throw NotRealizable(
            "g11 must have as many zeros as poles; otherwise g22 = 1/conj(g11) is improper");
    }
    if (!check_realness(g11)) {
        throw NotRealizable("pole-zero set violates the realness condition G(-W) = conj G(W)");
    }
    return {g11, symplectic_partner(g11)};
}

RationalFunction symplectic_partner(const RationalFunction& rf) {
    RationalFunction out;
    out.zeros = negated(rf.poles, true);
    out.poles = negated(rf.zeros, true);
    const double sign = ((rf.poles.size() + rf.zeros.size()) % 2 == 0) ? 1.0 : -1.0;
    out.gain = sign / std::conj(rf.gain);
    return out;
}

SymplecticCheck check_symplectic_realizability(const QuadratureTransferMatrix& g,
                                               const FrequencyGrid& grid, double tol) {
    grid.validate();
    SymplecticCheck out;
    for (double w : grid.points) {
        const Mat2 gm = g.at(-w);
        const Mat2 r = gm.adjoint() * theta() * gm - theta();
        out.max_residual = std::max(out.max_residual, spectral_norm(r));
    }
    out.pass = out.max_residual < tol;
    return out;
}

bool check_realness(const RationalFunction& rf, double tol) {
    // With s = iW the condition reads
    // k prod(-s - z)(-s - conj p) = conj(k) prod(-s - conj z)(-s - p)
    // as a polynomial identity; the common (-1)^deg factor drops out.
    const auto lhs = poly_from_roots(concat(negated(rf.zeros, false), negated(rf.poles, true)));
    const auto rhs = poly_from_roots(concat(negated(rf.zeros, true), negated(rf.poles, false)));
    double scale = 1.0;
    double worst = 0.0;
    for (size_t k = 0; k < lhs.size(); ++k) {
        const cplx a = rf.gain * lhs[k];
        const cplx b = std::conj(rf.gain) * rhs[k];
        scale = std::max({scale, std::abs(a), std::abs(b)});
        worst = std::max(worst, std::abs(a - b));
    }
    return worst <= tol * scale;
}

bool check_realness(const QuadratureTransferMatrix& g, double tol) {
    return check_realness(g.g11, tol) && check_realness(g.g22, tol);
}

int free_parameter_count(int order) {
    if (order < 1) {
        throw InvalidArgument("order must be at least 1");
    }
    return 2 * order;
}

Mat2 picture_convert(const Mat2& m, Conversion direction) {
    const Mat2& v = quadrature_basis();
    if (direction == Conversion::quadrature_to_sideband) {
        return v.adjoint() * m * v;
    }
    return v * m * v.adjoint();
}

}  // namespace lindet::tf
