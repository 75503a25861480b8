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

#include "lindet/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindet/doubled_basis.hpp"

namespace lindet::ss {

namespace {

constexpr double kResolventRcond = 1e-13;

Mat block_diag(const Mat& x, const Mat& y) {
    Mat out = Mat::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    out.topLeftCorner(x.rows(), x.cols()) = x;
    out.bottomRightCorner(y.rows(), y.cols()) = y;
    return out;
}

Mat port_basis(Index ports) {
    if (ports % 2 != 0) {
        throw InvalidArgument("picture conversion needs an even number of ports");
    }
    return quadrature_basis(ports / 2);
}

// Krylov subspace of (a, b) with orthonormal columns.
Mat reachable_basis(const Mat& a, const Mat& b, double tol) {
    const double na = std::max(spectral_norm(a), std::numeric_limits<double>::min());
    Mat q = orthonormal_range(b, tol);
    for (Index it = 0; it < a.rows() && q.cols() > 0; ++it) {
        Mat k(a.rows(), 2 * q.cols());
        k << q, a * q / na;
        Mat next = orthonormal_range(k, tol);
        if (next.cols() == q.cols()) {
            break;
        }
        q = std::move(next);
    }
    return q;
}

StateSpace project(const StateSpace& sys, const Mat& q) {
    StateSpace out;
    out.a = q.adjoint() * sys.a * q;
    out.b = q.adjoint() * sys.b;
    out.c = sys.c * q;
    out.d = sys.d;
    out.picture = sys.picture;
    return out;
}

}  // namespace

void StateSpace::validate() const {
    const Index n = a.rows();
    if (a.cols() != n || b.rows() != n || c.cols() != n || c.rows() != d.rows() ||
        b.cols() != d.cols()) {
        throw InvalidArgument("state-space matrices are not conformable");
    }
}

Mat frequency_response(const StateSpace& sys, double omega) {
    sys.validate();
    const Index n = sys.states();
    if (n == 0) {
        return sys.d;
    }
    const Mat r = -kI * omega * Mat::Identity(n, n) - sys.a;
    Eigen::PartialPivLU<Mat> lu(r);
    if (!(lu.rcond() > kResolventRcond)) {
        throw SingularResolvent("evaluation frequency is a system pole");
    }
    return sys.c * lu.solve(sys.b) + sys.d;
}

Mat quadrature_response(const StateSpace& sys, double omega) {
    Mat h = frequency_response(sys, omega);
    if (sys.picture == Picture::sideband) {
        h = port_basis(h.rows()) * h * port_basis(h.cols()).adjoint();
    }
    return h;
}

StateSpace canonical_realization(const tf::RationalFunction& rf) {
    rf.validate();
    // In s = -iW the entry reads c * prod(s + z) / prod(s + p) with
    // c = gain * (-1)^(nz - np).
    const Index n = static_cast<Index>(rf.poles.size());
    std::vector<cplx> neg_p;
    std::vector<cplx> neg_z;
    for (const cplx& p : rf.poles) neg_p.push_back(-p);
    for (const cplx& z : rf.zeros) neg_z.push_back(-z);
    const std::vector<cplx> den = tf::poly_from_roots(neg_p);
    std::vector<cplx> num = tf::poly_from_roots(neg_z);
    const double sign = ((rf.poles.size() - rf.zeros.size()) % 2 == 0) ? 1.0 : -1.0;
    for (cplx& x : num) x *= rf.gain * sign;
    num.insert(num.begin(), den.size() - num.size(), cplx(0.0));

    StateSpace out;
    out.a = Mat::Zero(n, n);
    out.b = Mat::Zero(n, 1);
    out.c = Mat::Zero(1, n);
    out.d = Mat::Constant(1, 1, num[0]);
    for (Index i = 0; i + 1 < n; ++i) {
        out.a(i, i + 1) = 1.0;
    }
    for (Index j = 0; j < n; ++j) {
        const size_t k = static_cast<size_t>(n - j);
        out.a(n - 1, j) = -den[k];
        out.c(0, j) = num[k] - num[0] * den[k];
    }
    if (n > 0) {
        out.b(n - 1, 0) = 1.0;
    }
    return out;
}

StateSpace canonical_realization(const tf::QuadratureTransferMatrix& g) {
    const StateSpace s1 = canonical_realization(g.g11);
    const StateSpace s2 = canonical_realization(g.g22);
    StateSpace out;
    out.a = block_diag(s1.a, s2.a);
    out.b = block_diag(s1.b, s2.b);
    out.c = block_diag(s1.c, s2.c);
    out.d = block_diag(s1.d, s2.d);
    out.picture = Picture::quadrature;
    return out;
}

Mat orthonormal_range(const Mat& m, double tol) {
    if (m.size() == 0) {
        return Mat::Zero(m.rows(), 0);
    }
    // Real input keeps a real basis, so real realizations stay real.
    if (m.imag().isZero(0.0)) {
        const Eigen::MatrixXd mr = m.real();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(mr, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        Index r = 0;
        while (r < sv.size() && sv(r) > tol * sv(0) && sv(0) > 0.0) {
            ++r;
        }
        return svd.matrixU().leftCols(r).cast<cplx>();
    }
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Index r = 0;
    while (r < sv.size() && sv(r) > tol * sv(0) && sv(0) > 0.0) {
        ++r;
    }
    return svd.matrixU().leftCols(r);
}

StateSpace minimal_realization(const StateSpace& sys, double tol) {
    sys.validate();
    if (sys.states() == 0) {
        return sys;
    }
    const StateSpace reach = project(sys, reachable_basis(sys.a, sys.b, tol));
    if (reach.states() == 0) {
        return reach;
    }
    const Mat qo = reachable_basis(reach.a.adjoint(), reach.c.adjoint(), tol);
    return project(reach, qo);
}

double growth_bound(const Mat& a) {
    if (a.rows() == 0) {
        return 0.0;
    }
    Eigen::ComplexEigenSolver<Mat> es(a, false);
    return es.eigenvalues().real().maxCoeff();
}

bool is_hurwitz(const Mat& a) { return a.rows() == 0 || growth_bound(a) < 0.0; }

TimeResponse time_response(const StateSpace& sys, const Vec& x0, const InputSignal& input,
                           double t_end, double dt) {
    sys.validate();
    if (!(dt > 0.0) || !(t_end >= 0.0)) {
        throw InvalidArgument("time_response needs dt > 0 and t_end >= 0");
    }
    const Index n = sys.states();
    const Index m = sys.inputs();
    if (x0.size() != n) {
        throw InvalidArgument("initial state has the wrong dimension");
    }
    const Index steps = static_cast<Index>(std::floor(t_end / dt + 1e-9));
    TimeResponse out;
    out.growth_bound = growth_bound(sys.a);
    out.natural = Mat::Zero(steps + 1, sys.outputs());
    out.forced = Mat::Zero(steps + 1, sys.outputs());

    // exp([[A, B, 0], [0, 0, I/dt], [0, 0, 0]] dt) holds the propagator and
    // the two hold integrals.
    Mat aug = Mat::Zero(n + 2 * m, n + 2 * m);
    aug.topLeftCorner(n, n) = sys.a;
    aug.block(0, n, n, m) = sys.b;
    aug.block(n, n + m, m, m) = Mat::Identity(m, m) / dt;
    const Mat e = (aug * dt).exp();
    const Mat phi = e.topLeftCorner(n, n);
    const Mat f0 = e.block(0, n, n, m);
    const Mat f1 = e.block(0, n + m, n, m);

    Vec xn = x0;
    Vec xf = Vec::Zero(n);
    Vec u = input(0.0);
    if (u.size() != m) {
        throw InvalidArgument("input signal has the wrong dimension");
    }
    for (Index k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        out.times.push_back(t);
        out.natural.row(k) = (sys.c * xn).transpose();
        out.forced.row(k) = (sys.c * xf + sys.d * u).transpose();
        if (k == steps) {
            break;
        }
        const Vec next_u = input(t + dt);
        xn = phi * xn;
        xf = phi * xf + f0 * u + f1 * (next_u - u);
        u = next_u;
    }
    return out;
}

StateSpace similarity_transform(const StateSpace& sys, const Mat& t) {
    sys.validate();
    if (t.rows() != sys.states() || t.cols() != sys.states()) {
        throw InvalidArgument("transform has the wrong dimension");
    }
    if (t.rows() == 0) {
        return sys;
    }
    Eigen::JacobiSVD<Mat> svd(t);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) {
        throw SingularTransform("similarity transform is singular");
    }
    Eigen::PartialPivLU<Mat> lu(t);
    StateSpace out;
    out.a = lu.solve(sys.a * t);
    out.b = lu.solve(sys.b);
    out.c = sys.c * t;
    out.d = sys.d;
    out.picture = sys.picture;
    return out;
}

double tf_distance(const StateSpace& sys, const tf::QuadratureTransferMatrix& g,
                   const tf::FrequencyGrid& grid) {
    grid.validate();
    if (sys.inputs() != 2 || sys.outputs() != 2) {
        throw InvalidArgument("tf_distance against a 2x2 transfer matrix needs a 2-port system");
    }
    double worst = 0.0;
    for (double w : grid.points) {
        const Mat h = quadrature_response(sys, w);
        const Mat ref = g.at(w);
        worst = std::max(worst, std::min(spectral_norm(h - ref), spectral_norm(h + ref)));
    }
    return worst;
}

double tf_distance(const StateSpace& lhs, const StateSpace& rhs, const tf::FrequencyGrid& grid) {
    grid.validate();
    if (lhs.inputs() != rhs.inputs() || lhs.outputs() != rhs.outputs()) {
        throw InvalidArgument("systems have different port counts");
    }
    double worst = 0.0;
    for (double w : grid.points) {
        const Mat h1 = quadrature_response(lhs, w);
        const Mat h2 = quadrature_response(rhs, w);
        worst = std::max(worst, std::min(spectral_norm(h1 - h2), spectral_norm(h1 + h2)));
    }
    return worst;
}

StateSpace to_sideband(const StateSpace& sys) {
    sys.validate();
    if (sys.picture == Picture::sideband) {
        return sys;
    }
    const Mat vin = port_basis(sys.inputs());
    const Mat vout = port_basis(sys.outputs());
    StateSpace out = sys;
    out.b = sys.b * vin;
    out.c = vout.adjoint() * sys.c;
    out.d = vout.adjoint() * sys.d * vin;
    out.picture = Picture::sideband;
    return out;
}

StateSpace to_quadrature(const StateSpace& sys) {
    sys.validate();
    if (sys.picture == Picture::quadrature) {
        return sys;
    }
    const Mat vin = port_basis(sys.inputs());
    const Mat vout = port_basis(sys.outputs());
    StateSpace out = sys;
    out.b = sys.b * vin.adjoint();
    out.c = vout * sys.c;
    out.d = vout * sys.d * vin.adjoint();
    out.picture = Picture::quadrature;
    return out;
}

}  // namespace lindet::ss
