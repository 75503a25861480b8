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

#include "lindet/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lindet/doubled_basis.hpp"

namespace lindet::sens {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAxisTol = 1e-9;
constexpr double kNearAxisTol = 1e-6;
constexpr double kBlowUpRatio = 10.0;

struct Spectrum {
    Vec eigenvalues;
    double scale = 1.0;
};

Spectrum spectrum_of(const Mat& a) {
    Spectrum s;
    if (a.rows() == 0) {
        s.eigenvalues = Vec(0);
        return s;
    }
    Eigen::ComplexEigenSolver<Mat> es(a, false);
    s.eigenvalues = es.eigenvalues();
    const double m = s.eigenvalues.cwiseAbs().maxCoeff();
    s.scale = m > 0.0 ? m : 1.0;
    return s;
}

Index mode_count(const ss::StateSpace& sys) {
    if (sys.states() % 2 != 0) {
        throw InvalidArgument("internal states must come in (a, a^dag) pairs");
    }
    return sys.states() / 2;
}

double row_power(const ss::StateSpace& sys, Index mode, Quadrature q, double omega) {
    return internal_mode_row(sys, mode, q, omega).squaredNorm();
}

// Frequency W* at which an eigenvalue on the imaginary axis puts a pole on
// the real axis, provided the selected quadrature actually sees it.
std::optional<double> real_axis_pole(const ss::StateSpace& sys, Index mode, Quadrature q,
                                     const Spectrum& sp, double axis_tol) {
    for (Index k = 0; k < sp.eigenvalues.size(); ++k) {
        const cplx lam = sp.eigenvalues(k);
        if (std::abs(lam.real()) >= axis_tol * sp.scale) {
            continue;
        }
        // -iW* = lam on the axis.
        const double w = -lam.imag();
        const double far = row_power(sys, mode, q, w + 1e-4 * sp.scale);
        const double near = row_power(sys, mode, q, w + 1e-6 * sp.scale);
        if (near > 0.0 && std::sqrt(near) > kBlowUpRatio * std::sqrt(far)) {
            return std::abs(w);
        }
    }
    return std::nullopt;
}

bool near_axis_resonance(const ss::StateSpace& sys, Index mode, Quadrature q, const Spectrum& sp) {
    for (Index k = 0; k < sp.eigenvalues.size(); ++k) {
        const cplx lam = sp.eigenvalues(k);
        const double re = std::abs(lam.real());
        if (re < kAxisTol * sp.scale || re >= kNearAxisTol * sp.scale) {
            continue;
        }
        const double w = -lam.imag();
        const double peak = row_power(sys, mode, q, w);
        const double off = row_power(sys, mode, q, w + 1e-2 * sp.scale);
        if (peak > kBlowUpRatio * kBlowUpRatio * off) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string to_string(Quadrature q) { return q == Quadrature::amplitude ? "amplitude" : "phase"; }

double ProbeCoupling::kappa() const {
    return carrier_frequency * std::sqrt(2.0 * photons) / cavity_length;
}

void ProbeCoupling::validate() const {
    for (double v : {carrier_frequency, cavity_length, photons, hbar}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidArgument("probe coupling constants must be positive and finite");
        }
    }
}

RowVec internal_mode_row(const ss::StateSpace& sys, Index mode, Quadrature q, double omega) {
    const ss::StateSpace s = ss::to_sideband(sys);
    const Index modes = mode_count(s);
    if (mode < 0 || mode >= modes) {
        throw InvalidArgument("mode index out of range");
    }
    const Index n = s.states();
    const Mat2& v = quadrature_basis();
    const int r = q == Quadrature::amplitude ? 0 : 1;
    RowVec e = RowVec::Zero(n);
    e(2 * mode) = v(r, 0);
    e(2 * mode + 1) = v(r, 1);

    const Mat res = -kI * omega * Mat::Identity(n, n) - s.a;
    Eigen::PartialPivLU<Mat> lu(res);
    if (!(lu.rcond() > 1e-13)) {
        throw SingularResolvent("evaluation frequency is a system pole");
    }
    const Mat vin = quadrature_basis(s.inputs() / 2);
    return e * lu.solve(s.b) * vin.adjoint();
}

cplx internal_mode_tf(const ss::StateSpace& sys, Index mode, Quadrature q, double omega) {
    const RowVec row = internal_mode_row(sys, mode, q, omega);
    return row(q == Quadrature::amplitude ? 0 : 1);
}

std::vector<double> probe_spectrum(const std::vector<cplx>& g_uf) {
    std::vector<double> out;
    out.reserve(g_uf.size());
    for (const cplx& g : g_uf) {
        out.push_back(std::norm(g));
    }
    return out;
}

PhotonVariance photon_variance(const ss::StateSpace& sys, Index mode, Quadrature q,
                               const ProbeCoupling& coupling, const IntegratorConfig& cfg) {
    coupling.validate();
    const ss::StateSpace s = ss::to_sideband(sys);
    if (mode < 0 || mode >= mode_count(s)) {
        throw InvalidArgument("mode index out of range");
    }
    const Spectrum sp = spectrum_of(s.a);
    PhotonVariance out;
    out.stable = ss::is_hurwitz(s.a);
    if (auto w = real_axis_pole(s, mode, q, sp, kAxisTol)) {
        out.diverges = true;
        out.divergence_frequency = *w;
        out.value = kInf;
        return out;
    }
    out.near_divergence = near_axis_resonance(s, mode, q, sp);

    const double wmax = cfg.range_factor * sp.scale;
    std::vector<double> cuts{0.0, wmax};
    for (Index k = 0; k < sp.eigenvalues.size(); ++k) {
        const double c = std::abs(sp.eigenvalues(k).imag());
        const double width = std::abs(sp.eigenvalues(k).real());
        for (double f : {0.0, 1.0, 3.0, 10.0, 30.0, 100.0}) {
            for (double x : {c - f * width, c + f * width, f * width}) {
                if (x > 0.0 && x < wmax) {
                    cuts.push_back(x);
                }
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double x, double y) { return y - x <= 1e-14 * wmax; }),
               cuts.end());

    auto f = [&](double w) { return row_power(s, mode, q, w); };
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 31>;
    double total = 0.0;
    double err = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        double e = 0.0;
        total += Integrator::integrate(f, cuts[k], cuts[k + 1],
                                       static_cast<unsigned>(cfg.max_depth),
                                       cfg.relative_tolerance, &e);
        err += e;
    }
    // Rational tail ~ c / W^p beyond wmax.
    const double f1 = f(wmax);
    if (f1 > 0.0) {
        const double f2 = f(wmax / 2.0);
        const double p = std::log2(f2 / f1);
        if (!(p > 1.5)) {
            throw IntegrationFailure("probe spectrum does not decay fast enough to integrate");
        }
        total += f1 * wmax / (p - 1.0);
    }
    if (!std::isfinite(total) || err > 1e-6 * std::max(total, 1e-300)) {
        throw IntegrationFailure("adaptive quadrature did not reach the requested tolerance");
    }
    const double scale = 2.0 * coupling.photons / (2.0 * std::numbers::pi);
    out.value = scale * total;
    out.error_estimate = scale * err;
    return out;
}

std::vector<double> qcrb_bound(const std::vector<double>& s_ff, const ProbeCoupling& coupling) {
    coupling.validate();
    const double k2 = coupling.kappa() * coupling.kappa();
    const double h2 = coupling.hbar * coupling.hbar;
    std::vector<double> out;
    out.reserve(s_ff.size());
    for (double s : s_ff) {
        if (s < 0.0) {
            throw InvalidArgument("spectral density must be non-negative");
        }
        out.push_back(s == 0.0 ? kInf : h2 / (k2 * s));
    }
    return out;
}

SensitivityReport sensitivity_report(const ss::StateSpace& sys, Index mode, Quadrature q,
                                     const ProbeCoupling& coupling, const tf::FrequencyGrid& grid,
                                     double xc, const IntegratorConfig& cfg) {
    grid.validate();
    SensitivityReport rep;
    rep.mode = mode;
    rep.quadrature = q;
    rep.omega = grid.points;
    std::vector<double> s;
    s.reserve(grid.points.size());
    for (double w : grid.points) {
        try {
            s.push_back(row_power(sys, mode, q, w));
        } catch (const SingularResolvent&) {
            s.push_back(kInf);
        }
    }
    const double k = coupling.kappa();
    rep.qcrb = qcrb_bound(s, coupling);
    for (double x : s) {
        rep.abs_g_uf.push_back(k * std::sqrt(x));
        rep.s_ff.push_back(k * k * x);
    }
    const PhotonVariance pv = photon_variance(sys, mode, q, coupling, cfg);
    rep.sigma_nn = pv.value;
    rep.diverges = pv.diverges;
    rep.near_divergence = pv.near_divergence;
    rep.divergence_frequency = pv.divergence_frequency;
    rep.snr_bound = snr_flat_signal(rep, coupling, xc);
    return rep;
}

double snr_flat_signal(const SensitivityReport& report, const ProbeCoupling& coupling, double xc) {
    coupling.validate();
    if (xc == 0.0) {
        return 0.0;
    }
    if (report.diverges) {
        return kInf;
    }
    const double r = coupling.carrier_frequency * xc / coupling.cavity_length;
    return r * r * report.sigma_nn;
}

OptimalProbe optimal_probe_mode(const ss::StateSpace& sys, const ProbeCoupling& coupling,
                                const tf::FrequencyGrid& grid, const IntegratorConfig& cfg) {
    grid.validate();
    const ss::StateSpace s = ss::to_sideband(sys);
    OptimalProbe out;
    for (Index m = 0; m < mode_count(s); ++m) {
        for (Quadrature q : {Quadrature::amplitude, Quadrature::phase}) {
            double peak = 0.0;
            for (double w : grid.points) {
                try {
                    peak = std::max(peak, row_power(s, m, q, w));
                } catch (const SingularResolvent&) {
                    peak = kInf;
                }
            }
            if (!(peak > 1e-24)) {
                continue;
            }
            out.ranking.push_back({m, q, photon_variance(s, m, q, coupling, cfg)});
        }
    }
    if (out.ranking.empty()) {
        throw InvalidArgument("no internal quadrature couples to the input field");
    }
    std::stable_sort(out.ranking.begin(), out.ranking.end(),
                     [](const ProbeCandidate& x, const ProbeCandidate& y) {
                         if (x.variance.diverges != y.variance.diverges) {
                             return x.variance.diverges;
                         }
                         return x.variance.value > y.variance.value;
                     });
    for (const auto& c : out.ranking) {
        if (c.variance.diverges) {
            out.divergent.push_back(c);
        }
    }
    out.mode = out.ranking.front().mode;
    out.quadrature = out.ranking.front().quadrature;
    out.report = sensitivity_report(s, out.mode, out.quadrature, coupling, grid, 0.0, cfg);
    return out;
}

std::vector<ScanPoint> divergence_scan(const SystemFamily& family,
                                       const std::vector<double>& parameters) {
    std::vector<ScanPoint> out;
    out.reserve(parameters.size());
    for (double p : parameters) {
        const ss::StateSpace s = ss::to_sideband(family(p));
        const Spectrum sp = spectrum_of(s.a);
        ScanPoint pt;
        pt.parameter = p;
        for (Index m = 0; m < mode_count(s) && !pt.diverges; ++m) {
            for (Quadrature q : {Quadrature::amplitude, Quadrature::phase}) {
                if (auto w = real_axis_pole(s, m, q, sp, kAxisTol)) {
                    pt.diverges = true;
                    pt.divergence_frequency = *w;
                    break;
                }
            }
        }
        out.push_back(pt);
    }
    return out;
}

std::string csv_header() { return "omega,abs_G_uF,S_FF,qcrb_bound"; }

}  // namespace lindet::sens
