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

// Python bindings for the main lindet operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lindet/cli/config.hpp"
#include "lindet/cli/jobs.hpp"
#include "lindet/hidden_modes.hpp"
#include "lindet/models.hpp"
#include "lindet/physical_realization.hpp"
#include "lindet/sensitivity.hpp"
#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace py = pybind11;
using namespace lindet;

PYBIND11_MODULE(lindet, m) {
    m.doc() = "Linear quantum detector toolkit";

    auto base = py::register_exception<Error>(m, "Error");
    auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NotRealizable>(m, "NotRealizable", invalid.ptr());
    py::register_exception<NotPhysical>(m, "NotPhysical", invalid.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<PoleHit>(m, "PoleHit", numerical.ptr());
    py::register_exception<SingularResolvent>(m, "SingularResolvent", numerical.ptr());
    py::register_exception<OnResonance>(m, "OnResonance", numerical.ptr());

    py::enum_<ss::Picture>(m, "Picture")
        .value("quadrature", ss::Picture::quadrature)
        .value("sideband", ss::Picture::sideband);
    py::enum_<sens::Quadrature>(m, "Quadrature")
        .value("amplitude", sens::Quadrature::amplitude)
        .value("phase", sens::Quadrature::phase);

    py::class_<tf::RationalFunction>(m, "RationalFunction")
        .def(py::init<>())
        .def(py::init([](std::vector<cplx> zeros, std::vector<cplx> poles, cplx gain) {
                 return tf::RationalFunction{std::move(zeros), std::move(poles), gain};
             }),
             py::arg("zeros"), py::arg("poles"), py::arg("gain") = cplx(1.0, 0.0))
        .def_readwrite("zeros", &tf::RationalFunction::zeros)
        .def_readwrite("poles", &tf::RationalFunction::poles)
        .def_readwrite("gain", &tf::RationalFunction::gain)
        .def("__call__", [](const tf::RationalFunction& rf, double w) {
            return tf::evaluate_rational(rf, w);
        });

    py::class_<tf::QuadratureTransferMatrix>(m, "QuadratureTransferMatrix")
        .def_readwrite("g11", &tf::QuadratureTransferMatrix::g11)
        .def_readwrite("g22", &tf::QuadratureTransferMatrix::g22)
        .def("at", &tf::QuadratureTransferMatrix::at);

    py::class_<tf::FrequencyGrid>(m, "FrequencyGrid")
        .def_static("linear", &tf::FrequencyGrid::linear)
        .def_static("logarithmic", &tf::FrequencyGrid::logarithmic)
        .def_readonly("points", &tf::FrequencyGrid::points);

    py::class_<tf::SymplecticCheck>(m, "SymplecticCheck")
        .def_readonly("passed", &tf::SymplecticCheck::pass)
        .def_readonly("max_residual", &tf::SymplecticCheck::max_residual);

    m.def("build_quadrature_tf", &tf::build_quadrature_tf);
    m.def("check_symplectic_realizability", &tf::check_symplectic_realizability, py::arg("g"),
          py::arg("grid"), py::arg("tol") = 1e-10);
    m.def(
        "check_realness",
        [](const tf::QuadratureTransferMatrix& g, double tol) { return tf::check_realness(g, tol); },
        py::arg("g"), py::arg("tol") = 1e-10);

    py::class_<ss::StateSpace>(m, "StateSpace")
        .def(py::init([](Mat a, Mat b, Mat c, Mat d, ss::Picture p) {
                 ss::StateSpace s{std::move(a), std::move(b), std::move(c), std::move(d), p};
                 s.validate();
                 return s;
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
             py::arg("picture") = ss::Picture::sideband)
        .def_readwrite("a", &ss::StateSpace::a)
        .def_readwrite("b", &ss::StateSpace::b)
        .def_readwrite("c", &ss::StateSpace::c)
        .def_readwrite("d", &ss::StateSpace::d)
        .def_readwrite("picture", &ss::StateSpace::picture);

    m.def("frequency_response", &ss::frequency_response);
    m.def("quadrature_response", &ss::quadrature_response);
    m.def("tf_distance", py::overload_cast<const ss::StateSpace&, const tf::QuadratureTransferMatrix&,
                                           const tf::FrequencyGrid&>(&ss::tf_distance));

    py::class_<realize::RealizabilityCertificate>(m, "RealizabilityCertificate")
        .def_readonly("residual1", &realize::RealizabilityCertificate::residual1)
        .def_readonly("residual2", &realize::RealizabilityCertificate::residual2)
        .def("passes", &realize::RealizabilityCertificate::passes);
    py::class_<realize::SynthesisResult>(m, "SynthesisResult")
        .def_readonly("system", &realize::SynthesisResult::system)
        .def_readonly("certificate", &realize::SynthesisResult::certificate)
        .def_readonly("tf_distance", &realize::SynthesisResult::tf_distance);
    py::class_<realize::OpenOscillator>(m, "OpenOscillator")
        .def_readonly("s", &realize::OpenOscillator::s)
        .def_readonly("l", &realize::OpenOscillator::l)
        .def_readonly("h", &realize::OpenOscillator::h);

    m.def("synthesize", &realize::synthesize);
    m.def("make_physically_realizable", &realize::make_physically_realizable);
    m.def("verify_physical", &realize::verify_physical);
    m.def("extract_open_oscillator", &realize::extract_open_oscillator);

    m.def("first_order_tf", &models::first_order_tf);
    m.def("expander_tf", &models::expander_tf);
    m.def("internal_squeezer", &models::internal_squeezer);
    m.def("tuned_cavity", &models::tuned_cavity);
    m.def("quantum_expander", &models::quantum_expander);

    py::class_<sens::ProbeCoupling>(m, "ProbeCoupling")
        .def(py::init([](double w0, double length, double photons) {
                 return sens::ProbeCoupling{w0, length, photons, 1.0};
             }),
             py::arg("carrier_frequency") = 1.0, py::arg("cavity_length") = 1.0,
             py::arg("photons") = 1.0)
        .def("kappa", &sens::ProbeCoupling::kappa);
    py::class_<sens::PhotonVariance>(m, "PhotonVariance")
        .def_readonly("value", &sens::PhotonVariance::value)
        .def_readonly("diverges", &sens::PhotonVariance::diverges)
        .def_readonly("divergence_frequency", &sens::PhotonVariance::divergence_frequency);
    m.def(
        "photon_variance",
        [](const ss::StateSpace& s, Index mode, sens::Quadrature q, const sens::ProbeCoupling& c) {
            return sens::photon_variance(s, mode, q, c);
        },
        py::arg("system"), py::arg("mode"), py::arg("quadrature"), py::arg("coupling"));
    m.def("internal_mode_tf", &sens::internal_mode_tf);

    py::class_<hidden::ModeNetwork>(m, "ModeNetwork")
        .def_static("pt", &hidden::ModeNetwork::pt, py::arg("gamma"), py::arg("g"),
                    py::arg("alpha") = 1.0)
        .def("with_shift", &hidden::ModeNetwork::with_shift)
        .def_readwrite("gamma", &hidden::ModeNetwork::gamma)
        .def_readwrite("g_b", &hidden::ModeNetwork::g_b)
        .def_readwrite("g_bdag", &hidden::ModeNetwork::g_bdag)
        .def_readwrite("g_c", &hidden::ModeNetwork::g_c)
        .def_readwrite("g_cdag", &hidden::ModeNetwork::g_cdag);
    py::class_<hidden::IoRelation>(m, "IoRelation")
        .def_readonly("noise_tf", &hidden::IoRelation::noise_tf)
        .def_readonly("signal_tf", &hidden::IoRelation::signal_tf)
        .def_readonly("readout", &hidden::IoRelation::readout);
    m.def("is_hidden", &hidden::is_hidden, py::arg("network"), py::arg("grid"),
          py::arg("tol") = 1e-12);
    m.def("invariance_matrix", &hidden::invariance_matrix);
    m.def("signal_response_shift", &hidden::signal_response_shift);
    m.def("final_io_relation", &hidden::final_io_relation);
    m.def("conserved_dimension",
          [](const hidden::ModeNetwork& n) { return hidden::conserved_observables(n).size(); });

    m.def(
        "run_job",
        [](const std::string& verb, const std::string& config_json) {
            const auto cfg = cli::parse_config(cli::Json::parse(config_json),
                                               cli::job_kind_from_string(verb));
            const cli::JobOutput out = cli::run_job(cfg);
            py::dict files;
            for (const auto& [name, content] : out.files) {
                files[py::str(name)] = content;
            }
            return py::make_tuple(out.report_text, out.report_json.dump(), files);
        },
        py::arg("verb"), py::arg("config_json"),
        "Runs a CLI job in memory; returns (report_text, report_json, files).");
}
