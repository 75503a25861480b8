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

#include "lindet/cli/jobs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lindet/doubled_basis.hpp"
#include "lindet/hidden_modes.hpp"
#include "lindet/models.hpp"
#include "lindet/physical_realization.hpp"
#include "lindet/sensitivity.hpp"

namespace lindet::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Units of the sensitivity quantities with hbar = 1 internally.
const char* kUnitOmega = "rad/s";
const char* kUnitAbsG = "m^-1 s^-1/2";
const char* kUnitSff = "hbar^2 m^-2 s^-1";
const char* kUnitQcrb = "m^2 s";

Json base_json(const JobConfig& cfg) {
    Json j;
    j["tool"] = "lindet";
    j["job"] = to_string(cfg.kind);
    j["input"] = cfg.source;
    return j;
}

void header(TextReport& t, const JobConfig& cfg) {
    t.section("lindet " + to_string(cfg.kind));
    t.field("system", cfg.system.type);
    t.field("input", cfg.system.params.dump());
}

std::string row_text(const Mat& m, Index i) {
    std::string s = "[";
    for (Index k = 0; k < m.cols(); ++k) {
        if (k) {
            s += ", ";
        }
        s += fmt(m(i, k));
    }
    return s + "]";
}

// Entries below 1e-12 of the largest one print as zero; JSON keeps them.
void matrix_block(TextReport& t, const std::string& name, const Mat& raw) {
    const double floor = raw.size() ? 1e-12 * raw.cwiseAbs().maxCoeff() : 0.0;
    const Mat m = raw.unaryExpr([floor](const cplx& z) {
        return cplx(std::abs(z.real()) <= floor ? 0.0 : z.real(),
                    std::abs(z.imag()) <= floor ? 0.0 : z.imag());
    });
    for (Index i = 0; i < m.rows(); ++i) {
        t.field(i == 0 ? name : "", row_text(m, i));
    }
}

Json certificate_json(const realize::RealizabilityCertificate& c, double tol) {
    return Json{{"residual_dynamics", json_number(c.residual1)},
                {"residual_output", json_number(c.residual2)},
                {"tolerance", tol},
                {"passes", c.passes(tol)}};
}

Json statespace_json(const ss::StateSpace& s) {
    Json j;
    j["type"] = "statespace";
    j["picture"] = s.picture == ss::Picture::sideband ? "sideband" : "quadrature";
    j["a"] = matrix_to_json(s.a);
    j["b"] = matrix_to_json(s.b);
    j["c"] = matrix_to_json(s.c);
    j["d"] = matrix_to_json(s.d);
    return j;
}

std::string ladder_name(Index slot_index, const std::vector<std::string>& names) {
    const auto mode = static_cast<size_t>(slot_index / 2);
    const std::string base = mode < names.size() ? names[mode] : "m" + std::to_string(mode);
    return slot_index % 2 ? base + "^dag" : base;
}

std::string observable_text(const RowVec& w, const std::vector<std::string>& names) {
    std::string s;
    for (Index k = 0; k < w.size(); ++k) {
        if (std::abs(w(k)) < 1e-12) {
            continue;
        }
        if (!s.empty()) {
            s += " + ";
        }
        s += "(" + fmt(w(k)) + ") " + ladder_name(k, names);
    }
    return s.empty() ? "0" : s;
}

// Single-mode oscillator parameters: damping from the port coupling,
// squeezing from the aa coefficient with H = -(i/2) chi (aa - a^dag a^dag) +
// detuning a^dag a.
struct ModeParameters {
    double gamma = 0.0;
    double chi = 0.0;
    double detuning = 0.0;
};

ModeParameters mode_parameters(const realize::OpenOscillator& osc, double chi_sign) {
    ModeParameters p;
    if (osc.l.size() > 0) {
        p.gamma = 0.5 * (std::norm(osc.l(0, 0)) - std::norm(osc.l(0, 1)));
    }
    const QuadraticHamiltonian h(1, osc.h);
    const cplx aa = h.coefficient(ann(0), ann(0));
    p.chi = chi_sign * (2.0 * kI * aa).real();
    p.detuning = h.coefficient(cre(0), ann(0)).real();
    return p;
}

std::vector<double> pole_real_parts(const tf::RationalFunction& rf) {
    std::vector<double> out;
    for (const cplx& p : rf.poles) {
        out.push_back(p.real());
    }
    return out;
}

bool stable_poles(const tf::RationalFunction& rf) {
    return std::all_of(rf.poles.begin(), rf.poles.end(),
                       [](const cplx& p) { return p.real() > 0.0; });
}

double max_abs_root(const tf::RationalFunction& rf) {
    double s = 0.0;
    for (const cplx& p : rf.poles) {
        s = std::max(s, std::abs(p));
    }
    for (const cplx& z : rf.zeros) {
        s = std::max(s, std::abs(z));
    }
    return s;
}

// Max over the grid of || H(-W)^dag Theta H(-W) - Theta || and of
// || H(-W) - conj H(W) || for a single-field state space.
std::pair<double, double> response_checks(const ss::StateSpace& sys, const tf::FrequencyGrid& grid) {
    double symp = 0.0;
    double real = 0.0;
    for (double w : grid.points) {
        const Mat hm = ss::quadrature_response(sys, -w);
        const Mat hp = ss::quadrature_response(sys, w);
        symp = std::max(symp, spectral_norm(hm.adjoint() * tf::theta() * hm - tf::theta()));
        real = std::max(real, spectral_norm(hm - hp.conjugate()));
    }
    return {symp, real};
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

JobOutput run_synth(const JobConfig& cfg) {
    JobOutput out;
    TextReport t;
    Json j = base_json(cfg);
    Json warnings = Json::array();
    header(t, cfg);

    const tf::PoleZeroSpec g11 = transfer_function(cfg.system);
    if (auto g22 = explicit_g22(cfg.system)) {
        const tf::RationalFunction want = tf::symplectic_partner(g11);
        const tf::QuadratureTransferMatrix given{g11, *g22};
        const tf::QuadratureTransferMatrix expect{g11, want};
        const auto grid = make_grid(cfg.grid, std::max(1.0, max_abs_root(g11)));
        double worst = 0.0;
        for (double w : grid.points) {
            worst = std::max(worst, spectral_norm(given.at(w) - expect.at(w)));
        }
        if (worst > cfg.tol) {
            throw NotRealizable("symplectic condition fails: the given g22 differs from "
                                "1/conj(g11) by up to " + fmt(worst));
        }
    }
    if (cfg.system.type == "second_order") {
        const Json& p = cfg.system.params;
        const auto e = models::expander_parameters(p.at("a1").get<double>(), p.at("b1").get<double>(),
                                                   p.at("a2").get<double>(), p.at("b2").get<double>());
        if (std::abs(e.dc_mismatch) > cfg.tol) {
            warnings.push_back("no-DC-gain condition a1 b1 = a2 b2 violated by " +
                               fmt(e.dc_mismatch));
        }
    }
    const tf::QuadratureTransferMatrix g = tf::build_quadrature_tf(g11);
    const realize::SynthesisResult r = realize::synthesize(g);
    const ss::StateSpace& sys = r.system;
    const double cert_tol = std::max(cfg.tol, 1e-9 * r.frequency_scale);
    if (!r.certificate.passes(cert_tol)) {
        throw NoSolution("synthesized system fails the realizability certificate");
    }

    t.section("realizability certificate");
    t.field("A J + J A^dag + B J B^dag", fmt(r.certificate.residual1));
    t.field("J C^dag + B J D^dag", fmt(r.certificate.residual2));
    t.field("verdict", verdict(r.certificate.passes(cert_tol)));
    t.field("tf distance (sign-modulo)", fmt(r.tf_distance));
    t.field("frequency scale", with_unit(r.frequency_scale, kUnitOmega));
    t.field("X unique", r.x_unique ? "yes" : "no (minimum-norm solution)");
    t.field("pi phase applied", r.pi_phase_applied ? "yes" : "no");
    j["certificate"] = certificate_json(r.certificate, cert_tol);
    j["tf_distance"] = json_number(r.tf_distance);
    j["frequency_scale"] = json_quantity(r.frequency_scale, kUnitOmega);
    j["x_unique"] = r.x_unique;
    j["pi_phase_applied"] = r.pi_phase_applied;
    if (!r.x_unique) {
        warnings.push_back("realizability constraint has a non-unique solution");
    }
    if (r.x_asymmetry_flagged) {
        warnings.push_back("constraint solution was not Hermitian to 1e-8 before symmetrization");
    }

    t.section("state space (sideband picture, states (a_k, a_k^dag), rates in rad/s)");
    matrix_block(t, "A", sys.a);
    matrix_block(t, "B", sys.b);
    matrix_block(t, "C", sys.c);
    matrix_block(t, "D", sys.d);
    j["statespace"] = statespace_json(sys);

    const realize::OpenOscillator osc = realize::extract_open_oscillator(sys);
    t.section("open oscillator (S, L, H), H = 1/2 x^dag M x with hbar = 1");
    matrix_block(t, "S", osc.s);
    matrix_block(t, "L coefficients", osc.l);
    matrix_block(t, "M", osc.h);
    j["oscillator"] = Json{{"s", matrix_to_json(osc.s)},
                           {"l", matrix_to_json(osc.l)},
                           {"h", matrix_to_json(osc.h)},
                           {"modes", osc.modes()}};

    if (osc.modes() == 1) {
        const ModeParameters p = mode_parameters(osc, 1.0);
        t.field("gamma", with_unit(p.gamma, kUnitOmega));
        t.field("chi", with_unit(p.chi, kUnitOmega) + "  [H = -(i/2) chi (aa - a^dag a^dag)]");
        t.field("detuning", with_unit(p.detuning, kUnitOmega));
        if (std::abs(p.chi) < 1e-12 * (1.0 + p.gamma) && std::abs(p.detuning) < 1e-12 * (1.0 + p.gamma)) {
            t.field("hamiltonian", "H = 0 (tuned cavity)");
        }
        j["parameters"] = Json{{"gamma", json_quantity(p.gamma, kUnitOmega)},
                               {"chi", json_quantity(p.chi, kUnitOmega)},
                               {"detuning", json_quantity(p.detuning, kUnitOmega)}};
        if (p.gamma > 0.0 && std::abs(p.gamma - std::abs(p.chi)) < 1e-6 * p.gamma) {
            warnings.push_back("squeezing is within 1e-6 of the oscillation threshold");
        }
    } else if (osc.modes() == 2) {
        const realize::NetworkDecomposition net = realize::decompose_network(sys);
        size_t port = 0;
        for (size_t k = 0; k < net.oscillators.size(); ++k) {
            if (net.oscillators[k].l.norm() > net.oscillators[port].l.norm()) {
                port = k;
            }
        }
        const size_t arm = 1 - port;
        const ModeParameters p = mode_parameters(net.oscillators[port], -1.0);
        const QuadraticHamiltonian hd(2, net.direct_hamiltonian);
        const cplx coupling = hd.coefficient(ann(static_cast<Index>(port)),
                                             cre(static_cast<Index>(arm)));
        t.section("network decomposition (series product, field meets wiring[0] first)");
        t.field("wiring", std::to_string(net.wiring[0]) + " -> " + std::to_string(net.wiring[1]));
        t.field("port mode", std::to_string(port));
        t.field("gamma", with_unit(p.gamma, kUnitOmega));
        t.field("chi", with_unit(p.chi, kUnitOmega) + "  [H = (i/2) chi (aa - a^dag a^dag)]");
        t.field("omega_s", with_unit(std::abs(coupling), kUnitOmega) +
                               "  [H_direct = omega_s (a_port a_arm^dag + h.c.)]");
        t.field("coupling coefficient", fmt(coupling));
        matrix_block(t, "H_direct M", net.direct_hamiltonian);
        Json oscs = Json::array();
        for (const auto& o : net.oscillators) {
            oscs.push_back(Json{{"s", matrix_to_json(o.s)},
                                {"l", matrix_to_json(o.l)},
                                {"h", matrix_to_json(o.h)}});
        }
        j["network"] = Json{{"wiring", net.wiring},
                            {"port_mode", port},
                            {"oscillators", oscs},
                            {"direct_hamiltonian", matrix_to_json(net.direct_hamiltonian)},
                            {"direct_coupling", complex_to_json(coupling)}};
        j["parameters"] = Json{{"gamma", json_quantity(p.gamma, kUnitOmega)},
                               {"chi", json_quantity(p.chi, kUnitOmega)},
                               {"omega_s", json_quantity(std::abs(coupling), kUnitOmega)}};
    }

    if (!warnings.empty()) {
        t.section("warnings");
        for (const auto& w : warnings) {
            t.line("  " + w.get<std::string>());
        }
    }
    j["warnings"] = warnings;
    out.report_text = t.str();
    out.report_json = j;
    out.files["statespace.json"] = statespace_json(sys).dump(2) + "\n";
    return out;
}

JobOutput run_check(const JobConfig& cfg) {
    JobOutput out;
    TextReport t;
    Json j = base_json(cfg);
    Json warnings = Json::array();
    header(t, cfg);
    t.section("checks (tolerance " + fmt(cfg.tol) + ")");

    if (cfg.system.is_transfer_function()) {
        const tf::PoleZeroSpec g11 = transfer_function(cfg.system);
        const auto given = explicit_g22(cfg.system);
        const tf::QuadratureTransferMatrix g{g11, given ? *given : tf::symplectic_partner(g11)};
        const auto grid =
            make_grid(cfg.grid, std::max({1.0, max_abs_root(g.g11), max_abs_root(g.g22)}));
        const tf::SymplecticCheck symp = tf::check_symplectic_realizability(g, grid, cfg.tol);
        const bool real = tf::check_realness(g, cfg.tol);
        const bool proper = g11.zeros.size() == g11.poles.size();
        const bool hurwitz = stable_poles(g.g11) && stable_poles(g.g22);
        const int order = static_cast<int>(g11.poles.size());
        const int free = order > 0 ? tf::free_parameter_count(order) : 0;

        t.field("symplectic", verdict(symp.pass) + " (max residual " + fmt(symp.max_residual) +
                                  " over " + std::to_string(grid.points.size()) + " points)");
        t.field("realness", verdict(real));
        t.field("equal zero/pole count", verdict(proper));
        t.field("hurwitz", verdict(hurwitz) + " (poles need Re p > 0)");
        t.field("g22", given ? "as given" : "completed as 1/conj(g11)");
        t.field("order", std::to_string(order));
        t.field("free parameters", std::to_string(free));
        if (!symp.pass) {
            t.line("  failing condition: G(-W)^dag Theta G(-W) = Theta");
        }
        if (!real) {
            t.line("  failing condition: G(-W) = conj G(W)");
        }
        j["symplectic"] = Json{{"pass", symp.pass}, {"max_residual", json_number(symp.max_residual)}};
        j["realness"] = real;
        j["equal_degree"] = proper;
        j["hurwitz"] = hurwitz;
        j["pole_real_parts"] = Json{{"g11", pole_real_parts(g.g11)}, {"g22", pole_real_parts(g.g22)}};
        j["order"] = order;
        j["free_parameters"] = free;

        if (cfg.system.type == "second_order" || cfg.system.type == "expander") {
            const auto rz = [](const std::vector<cplx>& v, size_t k) { return v[k].real(); };
            const auto e = models::expander_parameters(rz(g11.zeros, 0), rz(g11.zeros, 1),
                                                       rz(g11.poles, 0), rz(g11.poles, 1));
            const bool complex_roots =
                std::any_of(g11.zeros.begin(), g11.zeros.end(),
                            [](const cplx& z) { return z.imag() != 0.0; }) ||
                std::any_of(g11.poles.begin(), g11.poles.end(),
                            [](const cplx& p) { return p.imag() != 0.0; });
            if (!complex_roots) {
                t.field("dc mismatch a1 b1 - a2 b2", fmt(e.dc_mismatch));
                j["dc_mismatch"] = e.dc_mismatch;
                if (std::abs(e.dc_mismatch) > cfg.tol * (1.0 + std::abs(rz(g11.poles, 0) * rz(g11.poles, 1)))) {
                    warnings.push_back("DC gain: a1 b1 != a2 b2, so the expander has gain at DC "
                                       "(mismatch " + fmt(e.dc_mismatch) + ")");
                }
            }
        }
    } else {
        const ss::StateSpace sys = state_space(cfg.system);
        const ss::StateSpace sb = ss::to_sideband(sys);
        const auto grid = make_grid(cfg.grid, natural_scale(sys));
        const realize::RealizabilityCertificate cert = realize::verify_physical(sb);
        const bool hurwitz = ss::is_hurwitz(sys.a);
        t.field("realizability", verdict(cert.passes(cfg.tol)) + " (residuals " +
                                     fmt(cert.residual1) + ", " + fmt(cert.residual2) + ")");
        j["certificate"] = certificate_json(cert, cfg.tol);
        if (sys.inputs() == 2 && sys.outputs() == 2) {
            const auto [symp, real] = response_checks(sys, grid);
            t.field("symplectic", verdict(symp < cfg.tol) + " (max residual " + fmt(symp) + ")");
            t.field("realness", verdict(real < cfg.tol) + " (max residual " + fmt(real) + ")");
            j["symplectic"] = Json{{"pass", symp < cfg.tol}, {"max_residual", json_number(symp)}};
            j["realness"] = real < cfg.tol;
        }
        t.field("hurwitz", verdict(hurwitz) + " (growth bound " +
                               with_unit(ss::growth_bound(sys.a), kUnitOmega) + ")");
        j["hurwitz"] = hurwitz;
        const int order = static_cast<int>(sys.states() / 2);
        if (order > 0) {
            t.field("free parameters", std::to_string(tf::free_parameter_count(order)));
            j["free_parameters"] = tf::free_parameter_count(order);
        }
    }

    if (!warnings.empty()) {
        t.section("warnings");
        for (const auto& w : warnings) {
            t.line("  " + w.get<std::string>());
        }
    }
    j["warnings"] = warnings;
    out.report_text = t.str();
    out.report_json = j;
    return out;
}

JobOutput run_sensitivity(const JobConfig& cfg) {
    JobOutput out;
    TextReport t;
    Json j = base_json(cfg);
    Json warnings = Json::array();
    header(t, cfg);

    const ss::StateSpace sys = state_space(cfg.system);
    const sens::ProbeCoupling coupling = cfg.physical.coupling();
    const auto grid = make_grid(cfg.grid, natural_scale(sys));
    const sens::OptimalProbe best = sens::optimal_probe_mode(sys, coupling, grid);

    t.section("physical constants");
    t.field("carrier frequency", with_unit(cfg.physical.omega0, kUnitOmega));
    t.field("cavity length", with_unit(cfg.physical.length, "m"));
    t.field("photons", fmt(cfg.physical.photons));
    t.field("signal amplitude |x_c|", with_unit(cfg.physical.xc, "m"));
    t.field("kappa", with_unit(coupling.kappa(), "m^-1 s^-1"));

    t.section("photon-number variance per internal quadrature");
    Json table = Json::array();
    for (const auto& c : best.ranking) {
        std::string flags;
        if (c.variance.diverges) {
            flags = "  DIVERGES";
            if (c.variance.divergence_frequency) {
                flags += " at " + with_unit(*c.variance.divergence_frequency, kUnitOmega);
            }
        } else if (c.variance.near_divergence) {
            flags = "  near divergence";
        }
        t.field("mode " + std::to_string(c.mode) + " " + sens::to_string(c.quadrature),
                "sigma_NN = " + with_unit(c.variance.value, "photons^2") + flags);
        Json row{{"mode", c.mode},
                 {"quadrature", sens::to_string(c.quadrature)},
                 {"sigma_nn", json_quantity(c.variance.value, "photons^2")},
                 {"diverges", c.variance.diverges},
                 {"near_divergence", c.variance.near_divergence}};
        row["divergence_frequency"] = c.variance.divergence_frequency
                                          ? json_quantity(*c.variance.divergence_frequency, kUnitOmega)
                                          : Json(nullptr);
        table.push_back(row);
        if (c.variance.near_divergence) {
            warnings.push_back("mode " + std::to_string(c.mode) + " " +
                               sens::to_string(c.quadrature) +
                               " is within 1e-6 of the divergence threshold");
        }
    }
    j["variance_table"] = table;

    Index mode = best.mode;
    sens::Quadrature quad = best.quadrature;
    if (cfg.probe) {
        mode = cfg.probe->mode;
        quad = cfg.probe->quadrature;
    }
    const sens::SensitivityReport rep =
        sens::sensitivity_report(sys, mode, quad, coupling, grid, cfg.physical.xc);

    t.section("probe");
    t.field("optimal", "mode " + std::to_string(best.mode) + " " + sens::to_string(best.quadrature));
    t.field("reported", "mode " + std::to_string(mode) + " " + sens::to_string(quad) +
                            (cfg.probe ? " (from config)" : ""));
    t.field("sigma_NN", with_unit(rep.sigma_nn, "photons^2"));
    t.field("SNR bound (flat signal)", fmt(rep.snr_bound));
    t.field("diverges", rep.diverges ? "yes" : "no");
    if (rep.divergence_frequency) {
        t.field("divergence frequency", with_unit(*rep.divergence_frequency, kUnitOmega));
    }
    t.field("sweep", "sweep.csv (" + std::to_string(rep.omega.size()) + " rows; omega in " +
                         kUnitOmega + ", abs_G_uF in " + kUnitAbsG + ", S_FF in " + kUnitSff +
                         ", qcrb_bound in " + kUnitQcrb + ")");
    t.section("note");
    t.line("  " + normalization_note());

    Json probe{{"optimal_mode", best.mode},
               {"optimal_quadrature", sens::to_string(best.quadrature)},
               {"mode", mode},
               {"quadrature", sens::to_string(quad)},
               {"sigma_nn", json_quantity(rep.sigma_nn, "photons^2")},
               {"snr_bound", json_number(rep.snr_bound)},
               {"diverges", rep.diverges},
               {"near_divergence", rep.near_divergence}};
    probe["divergence_frequency"] = rep.divergence_frequency
                                        ? json_quantity(*rep.divergence_frequency, kUnitOmega)
                                        : Json(nullptr);
    j["probe"] = probe;
    j["units"] = Json{{"omega", kUnitOmega},
                      {"abs_G_uF", kUnitAbsG},
                      {"S_FF", kUnitSff},
                      {"qcrb_bound", kUnitQcrb}};
    j["warnings"] = warnings;
    j["notes"] = Json::array({normalization_note()});

    CsvTable csv(sens::csv_header());
    for (size_t k = 0; k < rep.omega.size(); ++k) {
        csv.row({csv_number(rep.omega[k]), csv_number(rep.abs_g_uf[k]), csv_number(rep.s_ff[k]),
                 csv_number(rep.qcrb[k])});
    }
    out.files["sweep.csv"] = csv.str();
    out.report_text = t.str();
    out.report_json = j;
    return out;
}

JobOutput run_hidden(const JobConfig& cfg) {
    JobOutput out;
    TextReport t;
    Json j = base_json(cfg);
    Json warnings = Json::array();
    header(t, cfg);

    const hidden::ModeNetwork net = network(cfg.system);
    double scale = net.gamma;
    for (cplx g : {net.g_b, net.g_bdag, net.g_c, net.g_cdag}) {
        scale = std::max(scale, std::abs(g));
    }
    for (const auto* ch : {&net.d_chain, &net.e_chain}) {
        for (cplx g : ch->g) {
            scale = std::max(scale, std::abs(g));
        }
    }
    const auto grid = make_grid(cfg.grid, scale);

    const double tnorm = hidden::max_invariance_norm(net, grid);
    const bool hid = tnorm < cfg.tol;
    t.section("invariance of the cavity response");
    t.field("hidden", hid ? "yes" : "no");
    t.field("max ||T_a|| over grid", fmt(tnorm));
    t.field("grid", std::to_string(grid.points.size()) + " points in [" + fmt(grid.points.front()) +
                        ", " + fmt(grid.points.back()) + "] " + kUnitOmega);
    j["hidden"] = hid;
    j["max_invariance_norm"] = json_number(tnorm);

    std::vector<std::string> names{"a", "b", "c"};
    for (Index k = 0; k < net.d_chain.size(); ++k) {
        names.push_back("d" + std::to_string(k));
    }
    for (Index k = 0; k < net.e_chain.size(); ++k) {
        names.push_back("e" + std::to_string(k));
    }
    const Index n = net.modes();
    const auto basis = hidden::conserved_observables(net);
    t.section("conserved observables (dimension " + std::to_string(basis.size()) + ")");
    Json cons = Json::array();
    for (const auto& w : basis) {
        t.line("  " + observable_text(w.coeffs, names));
        cons.push_back(matrix_to_json(w.coeffs));
    }
    j["conserved_basis"] = cons;

    struct Named {
        std::string name;
        hidden::ObservableVector w;
    };
    const auto b = hidden::ObservableVector::ladder(n, 1, false);
    const auto bd = hidden::ObservableVector::ladder(n, 1, true);
    const auto c = hidden::ObservableVector::ladder(n, 2, false);
    const auto cd = hidden::ObservableVector::ladder(n, 2, true);
    const std::vector<Named> named{{"X_+", hidden::x_plus(n)},  {"X_-", hidden::x_minus(n)},
                                   {"Y_+", hidden::y_plus(n)},  {"Y_-", hidden::y_minus(n)},
                                   {"c + b^dag", c + bd},       {"c^dag + b", cd + b}};
    Json in_span = Json::object();
    std::string found;
    for (const auto& nm : named) {
        const bool member = !basis.empty() && hidden::span_residual(basis, nm.w) < 1e-9;
        in_span[nm.name] = member;
        if (member) {
            found += (found.empty() ? "" : ", ") + nm.name;
        }
    }
    t.field("named members", found.empty() ? "none" : found);
    j["named_conserved"] = in_span;

    t.section("commutators [row, column] of the b/c quadratures");
    Json comm = Json::object();
    std::string head = "        ";
    for (size_t k = 0; k < 4; ++k) {
        std::string h = named[k].name;
        h.resize(12, ' ');
        head += h;
    }
    t.line(head);
    for (size_t r = 0; r < 4; ++r) {
        std::string line = "  " + named[r].name;
        line.resize(8, ' ');
        Json row = Json::object();
        for (size_t k = 0; k < 4; ++k) {
            const cplx v = hidden::symplectic_commutator(named[r].w, named[k].w);
            std::string cell = fmt(v);
            cell.resize(12, ' ');
            line += cell;
            row[named[k].name] = complex_to_json(v);
        }
        t.line(line);
        comm[named[r].name] = row;
    }
    j["commutators"] = comm;

    CsvTable csv(hidden::csv_header());
    double peak_value = -1.0;
    double peak_omega = kNaN;
    std::string readout;
    size_t resonant = 0;
    for (double w : grid.points) {
        double sig = kInf;
        double noise = kNaN;
        try {
            const hidden::IoRelation io = hidden::final_io_relation(net, w);
            sig = std::abs(io.signal_tf);
            noise = std::abs(io.noise_tf);
            readout = sens::to_string(io.readout);
        } catch (const NumericalError&) {
            ++resonant;
        }
        if (sig > peak_value) {
            peak_value = sig;
            peak_omega = w;
        }
        csv.row({csv_number(w), csv_number(sig), csv_number(noise)});
    }
    t.section("signal response");
    t.field("signal injection", "H_sig = -alpha F x_c, F = " +
                                    sens::to_string(net.signal.quadrature) + " quadrature of " +
                                    ladder_name(2 * net.signal.mode, names) + ", alpha = " +
                                    fmt(net.signal.strength));
    t.field("readout quadrature", readout.empty() ? "n/a" : readout);
    t.field("peak |signal_tf|", fmt(peak_value) + " at " + with_unit(peak_omega, kUnitOmega));
    t.field("sweep", "signal.csv (" + std::to_string(grid.points.size()) + " rows; omega in " +
                         kUnitOmega + ", abs_signal_tf in output quadrature per unit x_c)");
    if (resonant) {
        warnings.push_back(std::to_string(resonant) +
                           " grid point(s) sit on a lossless resonance; written as inf");
    }
    j["readout"] = readout.empty() ? Json(nullptr) : Json(readout);
    j["peak"] = Json{{"omega", json_quantity(peak_omega, kUnitOmega)},
                     {"abs_signal_tf", json_number(peak_value)}};
    j["units"] = Json{{"omega", kUnitOmega}};
    if (!warnings.empty()) {
        t.section("warnings");
        for (const auto& w : warnings) {
            t.line("  " + w.get<std::string>());
        }
    }
    j["warnings"] = warnings;

    out.files["signal.csv"] = csv.str();
    out.report_text = t.str();
    out.report_json = j;
    return out;
}

JobOutput run_sweep(const JobConfig& cfg) {
    JobOutput out;
    TextReport t;
    Json j = base_json(cfg);
    header(t, cfg);
    const SweepSpec& sweep = *cfg.sweep;
    const sens::ProbeCoupling coupling = cfg.physical.coupling();

    const sens::SystemFamily family = [&](double v) {
        return state_space(with_parameter(cfg.system, sweep.parameter, v));
    };
    const auto scan = sens::divergence_scan(family, sweep.values);

    CsvTable csv("parameter,diverges,divergence_frequency,sigma_nn");
    Json rows = Json::array();
    t.section("divergence scan over " + sweep.parameter);
    for (const auto& pt : scan) {
        const ss::StateSpace sys = family(pt.parameter);
        double sigma = kNaN;
        if (cfg.probe) {
            sigma = sens::photon_variance(sys, cfg.probe->mode, cfg.probe->quadrature, coupling).value;
        } else {
            const auto grid = make_grid(cfg.grid, natural_scale(sys));
            sigma = sens::optimal_probe_mode(sys, coupling, grid).ranking.front().variance.value;
        }
        const double wdiv = pt.divergence_frequency.value_or(kNaN);
        csv.row({csv_number(pt.parameter), pt.diverges ? "1" : "0", csv_number(wdiv),
                 csv_number(sigma)});
        t.field(sweep.parameter + " = " + fmt(pt.parameter),
                (pt.diverges ? "DIVERGES at " + with_unit(wdiv, kUnitOmega) + ", "
                             : std::string()) +
                    "sigma_NN = " + with_unit(sigma, "photons^2"));
        rows.push_back(Json{{"parameter", pt.parameter},
                            {"diverges", pt.diverges},
                            {"divergence_frequency",
                             pt.divergence_frequency ? json_quantity(wdiv, kUnitOmega) : Json(nullptr)},
                            {"sigma_nn", json_quantity(sigma, "photons^2")}});
    }
    t.field("probe", cfg.probe ? "mode " + std::to_string(cfg.probe->mode) + " " +
                                     sens::to_string(cfg.probe->quadrature)
                               : "best quadrature at each point");
    t.section("note");
    t.line("  " + normalization_note());
    j["parameter"] = sweep.parameter;
    j["scan"] = rows;
    j["notes"] = Json::array({normalization_note()});
    out.files["scan.csv"] = csv.str();
    out.report_text = t.str();
    out.report_json = j;
    return out;
}

JobOutput run_job(const JobConfig& cfg) {
    switch (cfg.kind) {
        case JobKind::synth:
            return run_synth(cfg);
        case JobKind::check:
            return run_check(cfg);
        case JobKind::sens:
            return run_sensitivity(cfg);
        case JobKind::hidden:
            return run_hidden(cfg);
        case JobKind::sweep:
            return run_sweep(cfg);
    }
    throw InvalidArgument("unknown job kind");
}

}  // namespace lindet::cli
