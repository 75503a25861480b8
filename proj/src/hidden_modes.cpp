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

#include "lindet/hidden_modes.hpp"

#include <algorithm>
#include <cmath>

#include "lindet/doubled_basis.hpp"

namespace lindet::hidden {

namespace {

constexpr Index kModeA = 0;
constexpr Index kModeB = 1;
constexpr Index kModeC = 2;
constexpr double kResonanceGuard = 1e-9;
constexpr double kNullTol = 1e-10;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Mat coupling_matrix(const Mat& m, Index n) { return m.size() == 0 ? Mat::Zero(n, n) : m; }

const AuxChain& chain_of(const ModeNetwork& net, Chain c) {
    return c == Chain::d ? net.d_chain : net.e_chain;
}

// (h, h^dag) <- (a, a^dag) for host coupling constants (g, gdag).
Mat2 host_from_port(cplx g, cplx gdag) {
    Mat2 k;
    k << kI * g, kI * gdag, -kI * std::conj(gdag), -kI * std::conj(g);
    return k;
}

// (a, a^dag) <- (h, h^dag).
Mat2 port_from_host(cplx g, cplx gdag) {
    Mat2 k;
    k << kI * std::conj(g), kI * gdag, -kI * std::conj(gdag), -kI * g;
    return k;
}

Mat2 host_transfer(const ModeNetwork& net, Chain chain, cplx g, cplx gdag, double omega) {
    const Mat2 k = host_from_port(g, gdag);
    if (k.isZero(0.0)) {
        return Mat2::Zero();
    }
    const AuxBlocks blocks = aux_block_matrices(net, chain, omega);
    Mat2 r = -kI * omega * Mat2::Identity();
    if (blocks.d.size() > 0) {
        r -= kI * blocks.d * blocks.m;
    }
    Eigen::PartialPivLU<Mat2> lu(r);
    if (!(lu.rcond() > 1e-13)) {
        throw ChainResonance("host mode is resonant at this frequency");
    }
    return lu.solve(k);
}

// Lossless resonances of the full network: frequencies W with -iW an
// eigenvalue on the imaginary axis.
void guard_resonance(const ss::StateSpace& sys, double omega) {
    Eigen::ComplexEigenSolver<Mat> es(sys.a, false);
    const Vec& lam = es.eigenvalues();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    for (Index k = 0; k < lam.size(); ++k) {
        if (std::abs(lam(k).real()) > 1e-9 * scale) {
            continue;
        }
        const double w = lam(k).imag();
        if (std::abs(omega * omega - w * w) < kResonanceGuard * (1.0 + w * w)) {
            throw OnResonance("frequency coincides with a lossless network resonance");
        }
    }
}

Mat resolvent_apply(const ss::StateSpace& sys, double omega, const Mat& rhs) {
    const Index n = sys.states();
    Eigen::PartialPivLU<Mat> lu(-kI * omega * Mat::Identity(n, n) - sys.a);
    if (!(lu.rcond() > 1e-13)) {
        throw OnResonance("frequency coincides with a network resonance");
    }
    return lu.solve(rhs);
}

}  // namespace

void AuxChain::validate() const {
    const Index n = size();
    if (static_cast<Index>(g_dag.size()) != n) {
        throw InvalidNetwork("chain coupling lists must have equal length");
    }
    for (const Mat* m : {&bs, &sq}) {
        if (m->size() != 0 && (m->rows() != n || m->cols() != n)) {
            throw InvalidNetwork("inter-chain coupling matrix has the wrong size");
        }
    }
    for (Index j = 0; j < n; ++j) {
        if (!finite(g[static_cast<size_t>(j)]) || !finite(g_dag[static_cast<size_t>(j)])) {
            throw InvalidNetwork("chain couplings must be finite");
        }
    }
    if (n > 0) {
        const Mat b = coupling_matrix(bs, n);
        const Mat s = coupling_matrix(sq, n);
        const double tol =
            1e-12 * std::max({1.0, b.cwiseAbs().maxCoeff(), s.cwiseAbs().maxCoeff()});
        if ((b - b.adjoint()).cwiseAbs().maxCoeff() > tol) {
            throw InvalidNetwork("beamsplitter chain couplings must be Hermitian");
        }
        if ((s - s.transpose()).cwiseAbs().maxCoeff() > tol) {
            throw InvalidNetwork("squeezing chain couplings must be symmetric");
        }
        if (b.diagonal().cwiseAbs().maxCoeff() > 0.0 || s.diagonal().cwiseAbs().maxCoeff() > 0.0) {
            throw InvalidNetwork("chain modes have no self couplings");
        }
    }
}

void ModeNetwork::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidNetwork("gamma must be positive");
    }
    for (cplx z : {g_b, g_bdag, g_c, g_cdag}) {
        if (!finite(z)) {
            throw InvalidNetwork("couplings must be finite");
        }
    }
    d_chain.validate();
    e_chain.validate();
    if (signal.mode < 0 || signal.mode >= modes()) {
        throw InvalidNetwork("signal mode index out of range");
    }
    if (!std::isfinite(signal.strength)) {
        throw InvalidNetwork("signal strength must be finite");
    }
}

ModeNetwork ModeNetwork::pt(double gamma, double g, double alpha) {
    ModeNetwork net;
    net.gamma = gamma;
    net.g_bdag = g;
    net.g_c = g;
    net.signal.strength = alpha;
    return net;
}

ModeNetwork ModeNetwork::with_shift(double omega_p) const {
    ModeNetwork net = *this;
    net.d_chain = AuxChain{{omega_p}, {0.0}, Mat(), Mat()};
    net.e_chain = AuxChain{{omega_p}, {0.0}, Mat(), Mat()};
    return net;
}

AuxBlocks aux_block_matrices(const ModeNetwork& net, Chain chain, double omega) {
    const AuxChain& ch = chain_of(net, chain);
    ch.validate();
    const Index n = ch.size();
    AuxBlocks out;
    out.d = Mat::Zero(2, 2 * n);
    out.g = Mat::Zero(2 * n, 2 * n);
    out.m = Mat::Zero(2 * n, 2);
    if (n == 0) {
        return out;
    }
    const Mat bs = coupling_matrix(ch.bs, n);
    const Mat sq = coupling_matrix(ch.sq, n);
    Mat gvec(2 * n, 2);
    for (Index j = 0; j < n; ++j) {
        const cplx g = ch.g[static_cast<size_t>(j)];
        const cplx gd = ch.g_dag[static_cast<size_t>(j)];
        out.d(0, j) = std::conj(g);
        out.d(0, n + j) = gd;
        out.d(1, j) = -std::conj(gd);
        out.d(1, n + j) = -g;
        gvec(j, 0) = kI * g;
        gvec(j, 1) = kI * gd;
        gvec(n + j, 0) = -kI * std::conj(gd);
        gvec(n + j, 1) = -kI * std::conj(g);
        for (Index i = 0; i < n; ++i) {
            out.g(j, i) = bs(i, j);
            out.g(j, n + i) = sq(i, j);
            out.g(n + j, i) = -std::conj(sq(i, j));
            out.g(n + j, n + i) = -std::conj(bs(i, j));
        }
    }
    const Mat r = -kI * omega * Mat::Identity(2 * n, 2 * n) + kI * out.g;
    Eigen::PartialPivLU<Mat> lu(r);
    if (!(lu.rcond() > 1e-13)) {
        throw ChainResonance("auxiliary chain is resonant at this frequency");
    }
    out.m = lu.solve(gvec);
    return out;
}

AuxTransfer aux_transfer(const ModeNetwork& net, double omega) {
    net.validate();
    AuxTransfer t;
    t.t_b = host_transfer(net, Chain::d, net.g_b, net.g_bdag, omega);
    t.t_c = host_transfer(net, Chain::e, net.g_c, net.g_cdag, omega);
    return t;
}

Mat2 invariance_matrix(const ModeNetwork& net, double omega) {
    const AuxTransfer t = aux_transfer(net, omega);
    return port_from_host(net.g_b, net.g_bdag) * t.t_b + port_from_host(net.g_c, net.g_cdag) * t.t_c;
}

double max_invariance_norm(const ModeNetwork& net, const tf::FrequencyGrid& grid) {
    grid.validate();
    double worst = 0.0;
    for (double w : grid.points) {
        worst = std::max(worst, spectral_norm(invariance_matrix(net, w)));
    }
    return worst;
}

bool is_hidden(const ModeNetwork& net, const tf::FrequencyGrid& grid, double tol) {
    return max_invariance_norm(net, grid) < tol;
}

ss::StateSpace network_state_space(const ModeNetwork& net) {
    net.validate();
    const Index modes = net.modes();
    QuadraticHamiltonian h(modes);
    h.add(-net.g_b, ann(kModeA), cre(kModeB));
    h.add(-net.g_bdag, cre(kModeA), cre(kModeB));
    h.add(-net.g_c, ann(kModeA), cre(kModeC));
    h.add(-net.g_cdag, cre(kModeA), cre(kModeC));
    Index first = 3;
    for (const auto& [host, ch] : {std::pair<Index, const AuxChain*>{kModeB, &net.d_chain},
                                   std::pair<Index, const AuxChain*>{kModeC, &net.e_chain}}) {
        const Index n = ch->size();
        const Mat bs = coupling_matrix(ch->bs, n);
        const Mat sq = coupling_matrix(ch->sq, n);
        for (Index j = 0; j < n; ++j) {
            h.add(-ch->g[static_cast<size_t>(j)], ann(host), cre(first + j));
            h.add(-ch->g_dag[static_cast<size_t>(j)], cre(host), cre(first + j));
            for (Index i = 0; i < j; ++i) {
                h.add(bs(i, j), ann(first + i), cre(first + j));
                h.add(sq(i, j), cre(first + i), cre(first + j));
            }
        }
        first += n;
    }
    const double k = std::sqrt(2.0 * net.gamma);
    ss::StateSpace s;
    s.picture = ss::Picture::sideband;
    s.a = h.drift();
    s.a(0, 0) -= net.gamma;
    s.a(1, 1) -= net.gamma;
    s.b = Mat::Zero(2 * modes, 2);
    s.b(0, 0) = k;
    s.b(1, 1) = k;
    s.c = Mat::Zero(2, 2 * modes);
    s.c(0, 0) = -k;
    s.c(1, 1) = -k;
    s.d = Mat::Identity(2, 2);
    return s;
}

Vec signal_drive(const ModeNetwork& net) {
    net.validate();
    const Index modes = net.modes();
    const ObservableVector f =
        ObservableVector::quadrature(modes, net.signal.mode, net.signal.quadrature);
    // -i [x_p, -alpha F] = i alpha sum_q K(p, q) f_q.
    return kI * net.signal.strength * commutator_matrix(modes) * f.coeffs.transpose();
}

Mat2 io_transfer(const ModeNetwork& net, double omega) {
    return ss::quadrature_response(network_state_space(net), omega);
}

ObservableVector ObservableVector::ladder(Index modes, Index mode, bool dagger) {
    if (mode < 0 || mode >= modes) {
        throw InvalidArgument("mode index out of range");
    }
    ObservableVector o{RowVec::Zero(2 * modes)};
    o.coeffs(2 * mode + (dagger ? 1 : 0)) = 1.0;
    return o;
}

ObservableVector ObservableVector::quadrature(Index modes, Index mode, sens::Quadrature q) {
    if (mode < 0 || mode >= modes) {
        throw InvalidArgument("mode index out of range");
    }
    const Mat2& v = quadrature_basis();
    const int r = q == sens::Quadrature::amplitude ? 0 : 1;
    ObservableVector o{RowVec::Zero(2 * modes)};
    o.coeffs(2 * mode) = v(r, 0);
    o.coeffs(2 * mode + 1) = v(r, 1);
    return o;
}

ObservableVector ObservableVector::operator+(const ObservableVector& o) const {
    if (coeffs.size() != o.coeffs.size()) {
        throw BasisMismatch("observables are written over different bases");
    }
    return {coeffs + o.coeffs};
}

ObservableVector ObservableVector::operator-(const ObservableVector& o) const {
    return *this + o * cplx(-1.0);
}

ObservableVector ObservableVector::operator*(cplx s) const { return {coeffs * s}; }

ObservableVector ObservableVector::adjoint() const { return {adjoint_coefficients(coeffs)}; }

bool ObservableVector::is_hermitian(double tol) const {
    return (coeffs - adjoint_coefficients(coeffs)).cwiseAbs().maxCoeff() <= tol;
}

std::vector<ObservableVector> conserved_observables(const ModeNetwork& net) {
    const ss::StateSpace s = network_state_space(net);
    const Index n = s.states();
    Mat ab(n, n + s.inputs());
    ab << s.a, s.b;
    // w [A B] = 0  <=>  [A B]^T w^T = 0.
    const Mat mt = ab.transpose();
    Eigen::JacobiSVD<Mat> svd(mt, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<ObservableVector> out;
    for (Index k = 0; k < n; ++k) {
        const double sk = k < sv.size() ? sv(k) : 0.0;
        if (sk <= kNullTol * top) {
            out.push_back({svd.matrixV().col(k).transpose()});
        }
    }
    return out;
}

double span_residual(const std::vector<ObservableVector>& basis, const ObservableVector& w) {
    RowVec r = w.coeffs;
    for (const auto& b : basis) {
        if (b.coeffs.size() != r.size()) {
            throw BasisMismatch("observables are written over different bases");
        }
        r -= (r * b.coeffs.adjoint())(0, 0) * b.coeffs;
    }
    return r.norm();
}

cplx symplectic_commutator(const ObservableVector& w1, const ObservableVector& w2) {
    if (w1.coeffs.size() != w2.coeffs.size() || w1.coeffs.size() % 2 != 0) {
        throw BasisMismatch("observables are written over different bases");
    }
    const Mat k = commutator_matrix(w1.coeffs.size() / 2);
    return (w1.coeffs * k * w2.coeffs.transpose())(0, 0);
}

ObservableVector x_plus(Index modes) {
    using sens::Quadrature;
    return (ObservableVector::quadrature(modes, kModeC, Quadrature::amplitude) +
            ObservableVector::quadrature(modes, kModeB, Quadrature::amplitude)) *
           (1.0 / std::sqrt(2.0));
}

ObservableVector x_minus(Index modes) {
    using sens::Quadrature;
    return (ObservableVector::quadrature(modes, kModeC, Quadrature::amplitude) -
            ObservableVector::quadrature(modes, kModeB, Quadrature::amplitude)) *
           (1.0 / std::sqrt(2.0));
}

ObservableVector y_plus(Index modes) {
    using sens::Quadrature;
    return (ObservableVector::quadrature(modes, kModeC, Quadrature::phase) +
            ObservableVector::quadrature(modes, kModeB, Quadrature::phase)) *
           (1.0 / std::sqrt(2.0));
}

ObservableVector y_minus(Index modes) {
    using sens::Quadrature;
    return (ObservableVector::quadrature(modes, kModeC, Quadrature::phase) -
            ObservableVector::quadrature(modes, kModeB, Quadrature::phase)) *
           (1.0 / std::sqrt(2.0));
}

cplx signal_response_shift(const ModeNetwork& net, double omega) {
    const ss::StateSpace s = network_state_space(net);
    guard_resonance(s, omega);
    const Mat x = resolvent_apply(s, omega, signal_drive(net));
    return (y_minus(net.modes()).coeffs * x)(0, 0);
}

IoRelation final_io_relation(const ModeNetwork& net, double omega) {
    const ss::StateSpace s = network_state_space(net);
    guard_resonance(s, omega);
    const Mat2& v = quadrature_basis();
    const Index n = s.states();
    const Index h = n - 2;
    // Eliminate the auxiliary modes: with M = -iW - A split into the cavity
    // block (first two states) and the rest, the cavity sees the Schur
    // complement M_aa - M_ah M_hh^-1 M_ha. Solving the full system instead
    // loses accuracy near W = 0, where the lossless block is singular.
    const Mat m = -kI * omega * Mat::Identity(n, n) - s.a;
    Mat rhs(n, 3);
    rhs << s.b, signal_drive(net);
    Mat2 schur = m.topLeftCorner(2, 2);
    Mat r_a = rhs.topRows(2);
    if (h > 0) {
        const Eigen::PartialPivLU<Mat> lu(m.bottomRightCorner(h, h));
        schur -= m.topRightCorner(2, h) * lu.solve(m.bottomLeftCorner(h, 2));
        r_a -= m.topRightCorner(2, h) * lu.solve(rhs.bottomRows(h));
    }
    const Mat x_a = schur.partialPivLu().solve(r_a);
    const Mat c_a = s.c.leftCols(2);
    IoRelation out;
    out.noise_matrix = v * (c_a * x_a.leftCols(2) + s.d) * v.adjoint();
    out.signal_vector = v * c_a * x_a.col(2);
    const int r = std::abs(out.signal_vector(1)) > std::abs(out.signal_vector(0)) ? 1 : 0;
    out.readout = r == 0 ? sens::Quadrature::amplitude : sens::Quadrature::phase;
    out.noise_tf = out.noise_matrix(r, r);
    out.signal_tf = out.signal_vector(r);
    return out;
}

std::string csv_header() { return "omega,abs_signal_tf,abs_noise_tf"; }

}  // namespace lindet::hidden
