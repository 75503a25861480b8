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

#include "lindet/physical_realization.hpp"

#include <algorithm>
#include <cmath>

#include "lindet/doubled_basis.hpp"

namespace lindet::realize {

namespace {

constexpr double kSolveTol = 1e-9;
constexpr double kRankTol = 1e-10;
constexpr double kAsymmetryFlag = 1e-8;
constexpr double kInertiaTol = 1e-12;

Mat kron(const Mat& x, const Mat& y) {
    Mat out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvec(const Vec& v, Index rows, Index cols) {
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Index half(Index n, const char* what) {
    if (n % 2 != 0) {
        throw InvalidArgument(std::string(what) + " must have even dimension (a, a^dag pairs)");
    }
    return n / 2;
}

// Rotates v so its largest-magnitude entry is real and positive.
void normalize_phase(Eigen::Ref<Vec> v) {
    Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const double m = std::abs(v(k));
    if (m > 0.0) {
        v *= std::conj(v(k)) / m;
    }
}

// Permutation swapping each (a, a^dag) pair.
Mat pair_swap(Index n) {
    Mat s = Mat::Zero(n, n);
    for (Index p = 0; p < n; ++p) {
        s(p, p ^ 1) = 1.0;
    }
    return s;
}

Mat doubled_scattering(const Mat& s) {
    const Index f = s.rows();
    Mat d = Mat::Zero(2 * f, 2 * f);
    for (Index i = 0; i < f; ++i) {
        for (Index j = 0; j < f; ++j) {
            d(2 * i, 2 * j) = s(i, j);
            d(2 * i + 1, 2 * j + 1) = std::conj(s(i, j));
        }
    }
    return d;
}

void drop_tiny_imaginary(ss::StateSpace& sys) {
    auto scale_of = [](const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; };
    const double s = 1.0 + std::max({scale_of(sys.a), scale_of(sys.b), scale_of(sys.c),
                                     scale_of(sys.d)});
    auto imag_of = [](const Mat& m) { return m.size() ? m.imag().cwiseAbs().maxCoeff() : 0.0; };
    const double im = std::max({imag_of(sys.a), imag_of(sys.b), imag_of(sys.c), imag_of(sys.d)});
    if (im <= 1e-10 * s) {
        sys.a = sys.a.real().cast<cplx>();
        sys.b = sys.b.real().cast<cplx>();
        sys.c = sys.c.real().cast<cplx>();
        sys.d = sys.d.real().cast<cplx>();
    }
}

// Symplectic projection of w away from the mode with coefficient row p.
RowVec project_out(const RowVec& w, const RowVec& p, const Mat& j) {
    const RowVec pt = adjoint_coefficients(p);
    const cplx along = (w * j * p.adjoint())(0, 0);
    const cplx against = (w * j * pt.adjoint())(0, 0);
    return w - along * p + against * pt;
}

Mat rows_to_transform(const std::vector<RowVec>& modes, Index dim) {
    Mat s(dim, dim);
    for (size_t k = 0; k < modes.size(); ++k) {
        s.row(2 * static_cast<Index>(k)) = modes[k];
        s.row(2 * static_cast<Index>(k) + 1) = adjoint_coefficients(modes[k]);
    }
    return s;
}

// x' = s x for a symplectic, pair-preserving s.
ss::StateSpace change_modes(const ss::StateSpace& sys, const Mat& s) {
    return ss::similarity_transform(sys, s.inverse());
}

// Fixes the mode gauge of a single-field realization: the port-coupled mode
// is a_port = -L / c (placed last); for two modes the remaining mode couples
// to it through a pure exchange term with A[arm, port] = -i w, w > 0.
ss::StateSpace canonicalize_gauge(const ss::StateSpace& sys) {
    const Index dim = sys.states();
    if (sys.outputs() != 2 || dim == 0) {
        return sys;
    }
    const Index n = dim / 2;
    const Mat j = j_matrix(n);
    const RowVec l = sys.c.row(0);
    const double c2 = (l * j * l.adjoint())(0, 0).real();
    if (!(c2 > 1e-14 * std::max(1.0, l.squaredNorm()))) {
        return sys;
    }
    const RowVec port = -l / std::sqrt(c2);

    std::vector<RowVec> modes;
    std::vector<RowVec> fixed{port};
    for (Index k = 0; k < n && static_cast<Index>(modes.size()) + 1 < n; ++k) {
        RowVec w = RowVec::Zero(dim);
        w(2 * k) = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const RowVec& f : fixed) {
                w = project_out(w, f, j);
            }
        }
        const double norm2 = (w * j * w.adjoint())(0, 0).real();
        if (norm2 > 1e-6) {
            w /= std::sqrt(norm2);
            modes.push_back(w);
            fixed.push_back(w);
        }
    }
    if (static_cast<Index>(modes.size()) + 1 != n) {
        return sys;
    }
    modes.push_back(port);
    ss::StateSpace out = change_modes(sys, rows_to_transform(modes, dim));

    if (n == 2) {
        const cplx p = out.a(0, 2);
        const cplx q = out.a(0, 3);
        if (std::abs(p) > 1e-12 && std::abs(q) < std::abs(p) * (1.0 - 1e-12)) {
            const double mu = 1.0 / std::sqrt(1.0 - std::norm(q / p));
            const cplx nu = -mu * q / std::conj(p);
            Mat s = Mat::Identity(4, 4);
            s(0, 0) = mu;
            s(0, 1) = nu;
            s(1, 0) = std::conj(nu);
            s(1, 1) = mu;
            out = change_modes(out, s);
        }
        const cplx p2 = out.a(0, 2);
        if (std::abs(p2) > 1e-12) {
            const cplx e = -kI * std::abs(p2) / p2;
            Mat s = Mat::Identity(4, 4);
            s(0, 0) = e;
            s(1, 1) = std::conj(e);
            out = change_modes(out, s);
        }
    }
    return out;
}

}  // namespace

ConstraintSolution solve_realizability_constraint(const ss::StateSpace& sys) {
    const ss::StateSpace s = ss::to_sideband(sys);
    const Index n = s.states();
    half(n, "state vector");
    const Mat jp = j_matrix(half(s.inputs(), "port vector"));
    ConstraintSolution out;
    if (n == 0) {
        out.x = Mat::Zero(0, 0);
        return out;
    }
    const Index p = s.outputs();
    const Mat id = Mat::Identity(n, n);
    Mat lhs(n * n + n * p, n * n);
    lhs.topRows(n * n) = kron(id, s.a) + kron(s.a.conjugate(), id);
    lhs.bottomRows(n * p) = kron(s.c.conjugate(), id);
    Vec rhs(n * n + n * p);
    rhs.head(n * n) = -vec(s.b * jp * s.b.adjoint());
    rhs.tail(n * p) = -vec(s.b * jp * s.d.adjoint());

    Eigen::CompleteOrthogonalDecomposition<Mat> cod;
    cod.setThreshold(kRankTol);
    cod.compute(lhs);
    const Vec sol = cod.solve(rhs);
    out.unique = cod.rank() == n * n;
    out.residual = (lhs * sol - rhs).norm();
    if (out.residual > kSolveTol * std::max(1.0, rhs.norm())) {
        throw NoSolution("realizability equations for X are inconsistent");
    }
    Mat x = unvec(sol, n, n);
    out.asymmetry = spectral_norm(x - x.adjoint());
    out.asymmetry_flagged = out.asymmetry > kAsymmetryFlag;
    out.x = (x + x.adjoint()) / 2.0;
    return out;
}

Mat factor_indefinite(const Mat& x) {
    const Index n = x.rows();
    if (x.cols() != n) {
        throw InvalidArgument("X must be square");
    }
    half(n, "X");
    if (n == 0) {
        return Mat::Zero(0, 0);
    }
    if (spectral_norm(x - x.adjoint()) > 1e-10 * std::max(1.0, spectral_norm(x))) {
        throw InvalidArgument("X must be Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es((x + x.adjoint()) / 2.0);
    const auto& lam = es.eigenvalues();
    const double tol = kInertiaTol * lam.cwiseAbs().maxCoeff();
    std::vector<Index> pos;
    std::vector<Index> neg;
    for (Index k = 0; k < n; ++k) {
        if (std::abs(lam(k)) <= tol) {
            throw WrongInertia("X is singular");
        }
        (lam(k) > 0.0 ? pos : neg).push_back(k);
    }
    if (static_cast<Index>(pos.size()) != n / 2) {
        throw WrongInertia("X inertia does not match J");
    }
    std::reverse(pos.begin(), pos.end());
    Mat t(n, n);
    for (Index k = 0; k < n / 2; ++k) {
        const Index ip = pos[static_cast<size_t>(k)];
        const Index in = neg[static_cast<size_t>(k)];
        t.col(2 * k) = std::sqrt(lam(ip)) * es.eigenvectors().col(ip);
        t.col(2 * k + 1) = std::sqrt(-lam(in)) * es.eigenvectors().col(in);
        normalize_phase(t.col(2 * k));
        normalize_phase(t.col(2 * k + 1));
    }
    return t;
}

Mat factor_indefinite_paired(const Mat& x) {
    const Index n = x.rows();
    half(n, "X");
    if (n == 0) {
        return Mat::Zero(0, 0);
    }
    const double scale = std::max(1.0, spectral_norm(x));
    if (spectral_norm(x + x.conjugate()) > 1e-9 * scale ||
        spectral_norm(x - x.adjoint()) > 1e-9 * scale) {
        throw InvalidArgument("paired factorization needs Hermitian X with X = -conj(X)");
    }
    const Mat xi = kI * Mat((x - x.conjugate()) / 2.0).imag().cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Mat> es(xi);
    const auto& lam = es.eigenvalues();
    const double tol = kInertiaTol * lam.cwiseAbs().maxCoeff();
    Mat t(n, n);
    Index k = 0;
    for (Index i = n - 1; i >= 0; --i) {
        if (std::abs(lam(i)) <= tol) {
            throw WrongInertia("X is singular");
        }
        if (lam(i) < 0.0) {
            break;
        }
        if (k == n / 2) {
            throw WrongInertia("X inertia does not match J");
        }
        Vec u = es.eigenvectors().col(i);
        normalize_phase(u);
        t.col(2 * k) = std::sqrt(lam(i)) * u;
        t.col(2 * k + 1) = t.col(2 * k).conjugate();
        ++k;
    }
    if (k != n / 2) {
        throw WrongInertia("X inertia does not match J");
    }
    return t;
}

RealizabilityCertificate verify_physical(const ss::StateSpace& sys) {
    const ss::StateSpace s = ss::to_sideband(sys);
    RealizabilityCertificate cert;
    cert.j = j_matrix(half(s.states(), "state vector"));
    const Mat jp = j_matrix(half(s.inputs(), "port vector"));
    half(s.outputs(), "port vector");
    if (s.states() == 0) {
        return cert;
    }
    cert.residual1 = spectral_norm(s.a * cert.j + cert.j * s.a.adjoint() + s.b * jp * s.b.adjoint());
    cert.residual2 = spectral_norm(cert.j * s.c.adjoint() + s.b * jp * s.d.adjoint());
    return cert;
}

SynthesisResult synthesize(const tf::QuadratureTransferMatrix& g) {
    double scale = 0.0;
    for (const auto* rf : {&g.g11, &g.g22}) {
        for (const cplx& r : rf->poles) scale = std::max(scale, std::abs(r));
        for (const cplx& r : rf->zeros) scale = std::max(scale, std::abs(r));
    }
    if (scale == 0.0) {
        scale = 1.0;
    }
    tf::QuadratureTransferMatrix gs = g;
    for (auto* rf : {&gs.g11, &gs.g22}) {
        if (rf->zeros.size() != rf->poles.size()) {
            throw NotRealizable("transfer function entries need equal numbers of zeros and poles");
        }
        for (cplx& r : rf->poles) r /= scale;
        for (cplx& r : rf->zeros) r /= scale;
    }

    ss::StateSpace sys = ss::canonical_realization(gs);
    drop_tiny_imaginary(sys);
    sys = ss::to_sideband(ss::minimal_realization(sys, 1e-9));

    SynthesisResult out;
    const ConstraintSolution sol = solve_realizability_constraint(sys);
    out.x_unique = sol.unique;
    out.x_asymmetry_flagged = sol.asymmetry_flagged;
    const double xs = std::max(1.0, spectral_norm(sol.x));
    const Mat t = spectral_norm(sol.x + sol.x.conjugate()) <= 1e-9 * xs
                      ? factor_indefinite_paired(sol.x)
                      : factor_indefinite(sol.x);
    sys = ss::similarity_transform(sys, t);

    if (sys.d.trace().real() < 0.0) {
        sys.c = -sys.c;
        sys.d = -sys.d;
        out.pi_phase_applied = true;
    }
    sys = canonicalize_gauge(sys);

    sys.a *= scale;
    sys.b *= std::sqrt(scale);
    sys.c *= std::sqrt(scale);
    out.system = sys;
    out.frequency_scale = scale;
    out.certificate = verify_physical(sys);
    out.tf_distance = ss::tf_distance(sys, g, tf::FrequencyGrid::default_for(g));
    return out;
}

ss::StateSpace make_physically_realizable(const tf::QuadratureTransferMatrix& g) {
    return synthesize(g).system;
}

OpenOscillator extract_open_oscillator(const ss::StateSpace& sys) {
    const ss::StateSpace s = ss::to_sideband(sys);
    const RealizabilityCertificate cert = verify_physical(s);
    const double tol =
        1e-8 * (1.0 + spectral_norm(s.a) + std::pow(spectral_norm(s.b), 2) + spectral_norm(s.d));
    if (!cert.passes(tol)) {
        throw NotPhysical("system fails the physical realizability certificate");
    }
    const Index fields = s.inputs() / 2;
    if (s.outputs() != s.inputs()) {
        throw NotPhysical("physical systems have as many output as input fields");
    }
    OpenOscillator osc;
    osc.s = Mat(fields, fields);
    for (Index i = 0; i < fields; ++i) {
        for (Index j = 0; j < fields; ++j) {
            osc.s(i, j) = s.d(2 * i, 2 * j);
        }
    }
    const double dtol = 1e-9 * (1.0 + spectral_norm(s.d));
    if (spectral_norm(s.d - doubled_scattering(osc.s)) > dtol) {
        throw NotPhysical("D mixes a and a^dag; not a scattering matrix");
    }
    if (spectral_norm(osc.s * osc.s.adjoint() - Mat::Identity(fields, fields)) > dtol) {
        throw NotPhysical("scattering matrix is not unitary");
    }
    const Index dim = s.states();
    osc.l = Mat(fields, dim);
    for (Index i = 0; i < fields; ++i) {
        osc.l.row(i) = s.c.row(2 * i);
        const RowVec twin = adjoint_coefficients(s.c.row(2 * i));
        if ((s.c.row(2 * i + 1) - twin).norm() > 1e-9 * (1.0 + s.c.norm())) {
            throw NotPhysical("output rows are not (L, L^dag) pairs");
        }
    }
    const Mat j = j_matrix(dim / 2);
    const Mat jp = j_matrix(fields);
    const Mat m = kI * j * (s.a + 0.5 * j * s.c.adjoint() * jp * s.c);
    osc.h = (m + m.adjoint()) / 2.0;
    return osc;
}

ss::StateSpace reconstruct(const OpenOscillator& osc) {
    const Index fields = osc.s.rows();
    const Index dim = osc.l.cols();
    half(dim, "coupling vector");
    if (osc.l.rows() != fields || osc.h.rows() != dim || osc.h.cols() != dim) {
        throw InvalidArgument("oscillator components have inconsistent dimensions");
    }
    ss::StateSpace out;
    out.picture = ss::Picture::sideband;
    out.c = Mat(2 * fields, dim);
    for (Index i = 0; i < fields; ++i) {
        out.c.row(2 * i) = osc.l.row(i);
        out.c.row(2 * i + 1) = adjoint_coefficients(osc.l.row(i));
    }
    out.d = doubled_scattering(osc.s);
    const Mat j = j_matrix(dim / 2);
    const Mat jp = j_matrix(fields);
    out.a = -0.5 * j * out.c.adjoint() * jp * out.c - kI * j * osc.h;
    out.b = -j * out.c.adjoint() * jp * out.d;
    return out;
}

Mat hamiltonian_matrix_of_form(const Mat& n) {
    const Mat s = pair_swap(n.rows());
    return n + s * n.transpose() * s;
}

NetworkDecomposition decompose_network(const ss::StateSpace& sys) {
    const OpenOscillator osc = extract_open_oscillator(sys);
    const Index modes = osc.modes();
    if (modes > 2 || osc.s.rows() != 1) {
        throw UnsupportedDimension("network decomposition supports one field and at most two modes");
    }
    NetworkDecomposition net;
    net.direct_hamiltonian = Mat::Zero(2 * modes, 2 * modes);
    if (modes < 2) {
        net.oscillators.push_back(osc);
        net.wiring = {0};
        return net;
    }
    RowVec l1 = osc.l.row(0);
    RowVec l2 = osc.l.row(0);
    l1.tail(2).setZero();
    l2.head(2).setZero();
    const Mat im = (l2.adjoint() * l1 - l1.adjoint() * l2) / (2.0 * kI);
    Mat hd = osc.h - hamiltonian_matrix_of_form(im);
    hd.topLeftCorner(2, 2).setZero();
    hd.bottomRightCorner(2, 2).setZero();
    net.direct_hamiltonian = hd;

    OpenOscillator g1{osc.s, l1.head(2), osc.h.topLeftCorner(2, 2)};
    OpenOscillator g2{Mat::Identity(1, 1), l2.tail(2), osc.h.bottomRightCorner(2, 2)};
    net.oscillators = {g1, g2};
    net.wiring = {0, 1};
    return net;
}

ss::StateSpace recombine(const NetworkDecomposition& net) {
    const Index modes = static_cast<Index>(net.oscillators.size());
    if (modes == 0 || modes > 2 || static_cast<Index>(net.wiring.size()) != modes) {
        throw InvalidArgument("recombine needs one or two oscillators with a wiring order");
    }
    const Index dim = 2 * modes;
    if (net.direct_hamiltonian.rows() != dim || net.direct_hamiltonian.cols() != dim) {
        throw InvalidArgument("direct Hamiltonian has the wrong dimension");
    }
    // Embed each oscillator's coupling row into the full doubled basis.
    std::vector<RowVec> rows;
    Mat h = net.direct_hamiltonian;
    for (Index k = 0; k < modes; ++k) {
        const OpenOscillator& o = net.oscillators[static_cast<size_t>(k)];
        if (o.s.rows() != 1 || o.l.cols() != 2) {
            throw InvalidArgument("recombine expects single-field, single-mode oscillators");
        }
        RowVec r = RowVec::Zero(dim);
        r.segment(2 * k, 2) = o.l.row(0);
        rows.push_back(r);
        h.block(2 * k, 2 * k, 2, 2) += o.h;
    }
    const auto first = static_cast<size_t>(net.wiring[0]);
    OpenOscillator total;
    total.s = net.oscillators[first].s;
    RowVec l = rows[first];
    if (modes == 2) {
        const auto second = static_cast<size_t>(net.wiring[1]);
        const cplx s2 = net.oscillators[second].s(0, 0);
        const RowVec l1 = rows[first];
        const RowVec l2 = rows[second];
        total.s = net.oscillators[second].s * total.s;
        l = s2 * l1 + l2;
        const Mat im = (l2.adjoint() * (s2 * l1) - (s2 * l1).adjoint() * l2) / (2.0 * kI);
        h += hamiltonian_matrix_of_form(im);
    }
    total.l = l;
    total.h = h;
    return reconstruct(total);
}

}  // namespace lindet::realize
