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

#include "lindet/doubled_basis.hpp"

#include <cmath>

namespace lindet {

namespace {

// Index of the conjugate partner within a mode pair.
Index partner(Index i) { return i ^ 1; }

}  // namespace

double spectral_norm(const Mat& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

Mat j_matrix(Index modes) {
    Mat j = Mat::Zero(2 * modes, 2 * modes);
    for (Index k = 0; k < modes; ++k) {
        j(2 * k, 2 * k) = 1.0;
        j(2 * k + 1, 2 * k + 1) = -1.0;
    }
    return j;
}

Mat commutator_matrix(Index modes) {
    Mat k = Mat::Zero(2 * modes, 2 * modes);
    for (Index m = 0; m < modes; ++m) {
        k(2 * m, 2 * m + 1) = 1.0;
        k(2 * m + 1, 2 * m) = -1.0;
    }
    return k;
}

const Mat2& quadrature_basis() {
    static const Mat2 v = [] {
        const double r = 1.0 / std::sqrt(2.0);
        Mat2 m;
        m << r, r, -kI * r, kI * r;
        return m;
    }();
    return v;
}

Mat quadrature_basis(Index modes) {
    Mat v = Mat::Zero(2 * modes, 2 * modes);
    for (Index k = 0; k < modes; ++k) {
        v.block<2, 2>(2 * k, 2 * k) = quadrature_basis();
    }
    return v;
}

RowVec adjoint_coefficients(const RowVec& w) {
    RowVec out(w.size());
    for (Index p = 0; p < w.size(); ++p) {
        out(partner(p)) = std::conj(w(p));
    }
    return out;
}

QuadraticHamiltonian::QuadraticHamiltonian(Index modes)
    : modes_(modes), m_(Mat::Zero(2 * modes, 2 * modes)) {}

QuadraticHamiltonian::QuadraticHamiltonian(Index modes, Mat m) : modes_(modes), m_(std::move(m)) {
    if (m_.rows() != 2 * modes || m_.cols() != 2 * modes) {
        throw InvalidArgument("QuadraticHamiltonian: matrix must be 2n x 2n");
    }
}

void QuadraticHamiltonian::add(cplx c, LadderOp x, LadderOp y) {
    if (x.mode >= modes_ || y.mode >= modes_ || x.mode < 0 || y.mode < 0) {
        throw InvalidArgument("QuadraticHamiltonian::add: mode index out of range");
    }
    const Index ix = slot(x);
    const Index iy = slot(y);
    // H = 1/2 sum (x^dag)_p M_pq x_q; X = (x^dag)_{partner(ix)}, Y = x_{iy}.
    // Both orderings XY and YX are written so that M keeps its doubled-up
    // symmetry; the hermitian conjugate supplies the mirrored entries.
    m_(partner(ix), iy) += c;
    m_(partner(iy), ix) += c;
    m_(iy, partner(ix)) += std::conj(c);
    m_(ix, partner(iy)) += std::conj(c);
}

Mat QuadraticHamiltonian::drift() const { return -kI * j_matrix(modes_) * m_; }

cplx QuadraticHamiltonian::coefficient(LadderOp x, LadderOp y) const {
    const Index ix = slot(x);
    const Index iy = slot(y);
    if (ix == iy) {
        return 0.5 * m_(partner(ix), iy);
    }
    return 0.5 * (m_(partner(ix), iy) + m_(partner(iy), ix));
}

}  // namespace lindet
