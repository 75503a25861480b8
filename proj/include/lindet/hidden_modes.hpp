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

// Auxiliary-mode networks around a port-coupled cavity mode a.
//
// Mode a (damping gamma, the only mode seen by the input field) couples to two
// lossless modes b and c:
//
//     H = -(g_b a b^dag + h.c.) - (g_bdag a^dag b^dag + h.c.)
//         -(g_c a c^dag + h.c.) - (g_cdag a^dag c^dag + h.c.)
//         + chains on b (modes d_j) and on c (modes e_j).
//
// A chain on host mode h contributes -(g_j h d_j^dag + h.c.) -
// (gdag_j h^dag d_j^dag + h.c.) plus inter-chain couplings stored as
// equation-of-motion matrices: d/dt d_k = -i sum_i bs(i, k) d_i
// - i sum_j sq(k, j) d_j^dag + ..., with bs Hermitian and sq symmetric, both
// with zero diagonal.
//
// Mode order in the doubled basis: a, b, c, d_0.., e_0.., each as (m, m^dag).

#pragma once

#include <vector>

#include "lindet/common.hpp"
#include "lindet/sensitivity.hpp"
#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::hidden {

struct AuxChain {
    std::vector<cplx> g;      // h d_j^dag couplings
    std::vector<cplx> g_dag;  // h^dag d_j^dag couplings
    Mat bs;                   // n x n, Hermitian, zero diagonal (empty = none)
    Mat sq;                   // n x n, symmetric, zero diagonal (empty = none)

    Index size() const { return static_cast<Index>(g.size()); }
    void validate() const;
};

struct SignalInjection {
    Index mode = 2;  // c by default
    sens::Quadrature quadrature = sens::Quadrature::amplitude;
    double strength = 1.0;  // alpha; H_sig = -alpha F x_c
};

struct ModeNetwork {
    double gamma = 1.0;
    cplx g_b = 0.0;
    cplx g_bdag = 0.0;
    cplx g_c = 0.0;
    cplx g_cdag = 0.0;
    AuxChain d_chain;
    AuxChain e_chain;
    SignalInjection signal;

    Index modes() const { return 3 + d_chain.size() + e_chain.size(); }
    void validate() const;

    // g_bdag = g_c = g, the other couplings zero.
    static ModeNetwork pt(double gamma, double g, double alpha = 1.0);
    // Adds single-mode chains with coupling omega_p on b and on c.
    ModeNetwork with_shift(double omega_p) const;
};

enum class Chain { d, e };

struct AuxBlocks {
    Mat d;  // 2 x 2n
    Mat g;  // 2n x 2n
    Mat m;  // 2n x 2
};

// Block algebra for the chain on b (Chain::d) or c (Chain::e); the chain
// vector is ordered (d_1..d_n, d_1^dag..d_n^dag). Throws ChainResonance.
AuxBlocks aux_block_matrices(const ModeNetwork& net, Chain chain, double omega);

struct AuxTransfer {
    Mat2 t_b;
    Mat2 t_c;
};

// (b, b^dag) = T_b (a, a^dag) and (c, c^dag) = T_c (a, a^dag).
AuxTransfer aux_transfer(const ModeNetwork& net, double omega);

// Back-action of the auxiliary modes on (a, a^dag); zero when hidden.
Mat2 invariance_matrix(const ModeNetwork& net, double omega);

bool is_hidden(const ModeNetwork& net, const tf::FrequencyGrid& grid, double tol = 1e-12);
double max_invariance_norm(const ModeNetwork& net, const tf::FrequencyGrid& grid);

// Full network (sideband picture, one input field on a).
ss::StateSpace network_state_space(const ModeNetwork& net);

// xdot = A x + B u + e x_c.
Vec signal_drive(const ModeNetwork& net);

// Input-output transfer matrix of the full network in the quadrature picture.
Mat2 io_transfer(const ModeNetwork& net, double omega);

struct ObservableVector {
    RowVec coeffs;  // O = coeffs . x over the doubled basis

    static ObservableVector ladder(Index modes, Index mode, bool dagger);
    static ObservableVector quadrature(Index modes, Index mode, sens::Quadrature q);
    ObservableVector operator+(const ObservableVector& o) const;
    ObservableVector operator-(const ObservableVector& o) const;
    ObservableVector operator*(cplx s) const;
    ObservableVector adjoint() const;
    bool is_hermitian(double tol = 1e-12) const;
};

// Orthonormal basis of {w : w A = 0, w B = 0}.
std::vector<ObservableVector> conserved_observables(const ModeNetwork& net);

// Projection residual of w onto span(basis); zero when w lies in the span.
double span_residual(const std::vector<ObservableVector>& basis, const ObservableVector& w);

// [w1 . x, w2 . x].
cplx symplectic_commutator(const ObservableVector& w1, const ObservableVector& w2);

// Named observables of the b/c pair: X_+- = (X_c +- X_b)/sqrt2 and the same
// for Y.
ObservableVector x_plus(Index modes);
ObservableVector x_minus(Index modes);
ObservableVector y_plus(Index modes);
ObservableVector y_minus(Index modes);

// Y_- / x_c at W. Throws OnResonance at a lossless resonance of the network.
cplx signal_response_shift(const ModeNetwork& net, double omega);

struct IoRelation {
    cplx noise_tf;   // readout quadrature response to the same input quadrature
    cplx signal_tf;  // readout quadrature response to x_c
    sens::Quadrature readout = sens::Quadrature::amplitude;
    Mat2 noise_matrix;  // full quadrature input-output matrix
    Eigen::Vector2cd signal_vector;
};

// Eliminates all internal modes at W; the readout is the output quadrature
// carrying the signal.
IoRelation final_io_relation(const ModeNetwork& net, double omega);

std::string csv_header();

}  // namespace lindet::hidden
