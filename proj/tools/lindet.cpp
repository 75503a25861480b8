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

// lindet <verb> --config job.json [--out dir] [--grid-min W] [--grid-max W]
//        [--grid-points n] [--tol t]
//
// Exit codes: 0 success (flagged divergences included), 2 input or
// realizability error, 3 numerical failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lindet/cli/config.hpp"
#include "lindet/cli/jobs.hpp"
#include "lindet/cli/report.hpp"

namespace {

struct Options {
    std::string config;
    std::string out = ".";
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    std::optional<int> grid_points;
    std::optional<double> tol;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "job configuration (JSON)")->required();
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--grid-min", o.grid_min, "lowest grid frequency (rad/s)");
    sub->add_option("--grid-max", o.grid_max, "highest grid frequency (rad/s)");
    sub->add_option("--grid-points", o.grid_points, "number of grid points");
    sub->add_option("--tol", o.tol, "check tolerance");
}

int run(lindet::cli::JobKind kind, const Options& o) {
    using namespace lindet;
    try {
        cli::JobConfig cfg = cli::load_config(o.config, kind);
        if (o.grid_min) {
            cfg.grid.min = *o.grid_min;
        }
        if (o.grid_max) {
            cfg.grid.max = *o.grid_max;
        }
        if (o.grid_points) {
            cfg.grid.points = *o.grid_points;
        }
        if (o.tol) {
            if (!(*o.tol > 0.0)) {
                throw cli::ConfigError("--tol must be positive");
            }
            cfg.tol = *o.tol;
        }
        const cli::JobOutput out = cli::run_job(cfg);
        cli::write_outputs(o.out, out);
        std::cout << out.report_text;
        return cli::kExitOk;
    } catch (const NotRealizable& e) {
        std::cerr << "lindet: not realizable: " << e.what() << "\n";
        return cli::kExitInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "lindet: invalid input: " << e.what() << "\n";
        return cli::kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "lindet: numerical failure: " << e.what() << "\n";
        return cli::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "lindet: error: " << e.what() << "\n";
        return cli::kExitNumerical;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using lindet::cli::JobKind;
    CLI::App app{"lindet: linear quantum detector toolkit"};
    app.require_subcommand(1);
    Options opts;
    const std::pair<const char*, const char*> verbs[] = {
        {"synth", "synthesize a physically realizable state space from a transfer function"},
        {"check", "check symplectic, realness and stability conditions"},
        {"sens", "photon-number variance and quantum Cramer-Rao sweep"},
        {"hidden", "hidden-mode invariance, conserved observables, signal response"},
        {"sweep", "divergence scan over one system parameter"},
    };
    for (const auto& [name, help] : verbs) {
        add_common(app.add_subcommand(name, help), opts);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lindet::cli::kExitInput;
    }
    const std::string verb = app.get_subcommands().front()->get_name();
    return run(lindet::cli::job_kind_from_string(verb), opts);
}
