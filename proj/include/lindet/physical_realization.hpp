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

// Physically realizable quantum state spaces and their (S, L, H) oscillator
// descriptions.
//
// A physically realizable system is written in the sideband picture: internal
// states ordered (a_0, a_0^dag, a_1, a_1^dag, ...), ports (a_in, a_in^dag) per
// field. It satisfies
//
//     A J + J A^dag + B J B^dag = 0,    J C^dag + B J D^dag = 0.
//
// The oscillator convention is a_out = S a_in + L, with L = l . x, and
//
//     A = -1/2 J C^dag J C - i J M,    B = -J C^dag J D,
//
// where H = 1/2 x^dag M x.

#pragma once

#include <vector>

#include "lindet/common.hpp"
#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::realize {

struct RealizabilityCertificate {
    double residual1 = 0.0;  // || A J + J A^dag + B J B^dag ||
    double residual2 = 0.0;  // || J C^dag + B J D^dag ||
    Mat j;                   // state-space J

    bool passes(double tol) const { return residual1 < tol && residual2 < tol; }
};

struct ConstraintSolution {
    Mat x;
    bool unique = true;
    double residual = 0.0;
    double asymmetry = 0.0;  // || X - X^dag || before symmetrization
    bool asymmetry_flagged = false;
};

// Joint least-squares solve of A X + X A^dag + B J B^dag = 0 and
// X C^dag + B J D^dag = 0. Minimum-norm when rank deficient. Ports are
// converted to the sideband picture first.
ConstraintSolution solve_realizability_constraint(const ss::StateSpace& sys);

// X = T J T^dag with J = diag(1, -1, ...). Columns are ordered to J's sign
// pattern and phase-normalized (largest component real and positive).
Mat factor_indefinite(const Mat& x);

// Same factorization for X = -conj(X), with columns (sqrt(l) u, sqrt(l) conj u)
// per positive eigenpair so that T^-1 maps real states to (a, a^dag) pairs.
Mat factor_indefinite_paired(const Mat& x);

RealizabilityCertificate verify_physical(const ss::StateSpace& sys);

struct SynthesisResult {
    ss::StateSpace system;
    RealizabilityCertificate certificate;
    double tf_distance = 0.0;
    double frequency_scale = 1.0;
    bool x_unique = true;
    bool x_asymmetry_flagged = false;
    bool pi_phase_applied = false;
};

// De-dimensionalize, canonical and minimal realization, solve for X, factor,
// transform, fix the output phase and mode gauge, re-dimensionalize.
SynthesisResult synthesize(const tf::QuadratureTransferMatrix& g);

ss::StateSpace make_physically_realizable(const tf::QuadratureTransferMatrix& g);

struct OpenOscillator {
    Mat s;  // fields x fields, unitary
    Mat l;  // fields x 2n, coefficients of L_i over the doubled basis
    Mat h;  // 2n x 2n, H = 1/2 x^dag h x

    Index modes() const { return l.cols() / 2; }
};

// Throws NotPhysical when the certificate fails or D mixes a and a^dag.
OpenOscillator extract_open_oscillator(const ss::StateSpace& sys);

ss::StateSpace reconstruct(const OpenOscillator& osc);

// Matrix of x^dag n x written as 1/2 x^dag M x (c-numbers dropped).
Mat hamiltonian_matrix_of_form(const Mat& n);

struct NetworkDecomposition {
    // One single-mode oscillator per internal mode; l and h are written over
    // that mode only.
    std::vector<OpenOscillator> oscillators;
    // Direct coupling over the full doubled basis.
    Mat direct_hamiltonian;
    // Series order: the field passes oscillators[wiring[0]] first.
    std::vector<int> wiring;
};

// Two-mode, single-field systems only; G_2 <| G_1 with S_2 = I.
NetworkDecomposition decompose_network(const ss::StateSpace& sys);

ss::StateSpace recombine(const NetworkDecomposition& net);

}  // namespace lindet::realize
