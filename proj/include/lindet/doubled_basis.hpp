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

// Helpers for the doubled-up mode basis x = (a_0, a_0^dag, a_1, a_1^dag, ...).
//
// All multi-mode objects in lindet order their internal states this way, so a
// system with n modes has 2n states and J = diag(1, -1, 1, -1, ...).

#pragma once

#include "lindet/common.hpp"

namespace lindet {

struct LadderOp {
    Index mode = 0;
    bool dagger = false;
};

inline LadderOp ann(Index mode) { return {mode, false}; }
inline LadderOp cre(Index mode) { return {mode, true}; }

inline Index slot(LadderOp op) { return 2 * op.mode + (op.dagger ? 1 : 0); }

Mat j_matrix(Index modes);

// K(p, q) = [x_p, x_q].
Mat commutator_matrix(Index modes);

// Quadrature basis change for one mode: (X, Y)^T = V (a, a^dag)^T with
// X = (a + a^dag)/sqrt2 and Y = (a - a^dag)/(sqrt2 i). V is unitary.
const Mat2& quadrature_basis();

// blockdiag(V, ..., V) for `modes` modes.
Mat quadrature_basis(Index modes);

// Coefficients of (w . x)^dag given coefficients of w . x.
RowVec adjoint_coefficients(const RowVec& w);

// Quadratic Hamiltonian H = 1/2 x^dag M x over the doubled basis.
class QuadraticHamiltonian {
   public:
    explicit QuadraticHamiltonian(Index modes);
    QuadraticHamiltonian(Index modes, Mat m);

    // H += c X Y + (c X Y)^dag, up to a c-number.
    void add(cplx c, LadderOp x, LadderOp y);

    Index modes() const { return modes_; }
    const Mat& matrix() const { return m_; }

    // Closed (lossless) Heisenberg drift: xdot = -i J M x.
    Mat drift() const;

    // Coefficient of the normally ordered monomial X Y (X, Y on different
    // modes, or X = a^dag, Y = a, or X = Y) in H.
    cplx coefficient(LadderOp x, LadderOp y) const;

   private:
    Index modes_;
    Mat m_;
};

}  // namespace lindet
