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

// CLI job runners. Each returns the full output set; nothing touches the
// filesystem until write_outputs.

#pragma once

#include "lindet/cli/config.hpp"
#include "lindet/cli/report.hpp"

namespace lindet::cli {

// Synthesis, oscillator extraction and (for two modes) network decomposition.
// Extra file: statespace.json.
JobOutput run_synth(const JobConfig& cfg);

// Symplectic, realness and stability verdicts. Failed checks are reported,
// not thrown.
JobOutput run_check(const JobConfig& cfg);

// Per-quadrature photon-number variance table and the sweep of the chosen
// probe. Extra file: sweep.csv.
JobOutput run_sensitivity(const JobConfig& cfg);

// Invariance verdict, conserved observables and the signal-response sweep.
// Extra file: signal.csv.
JobOutput run_hidden(const JobConfig& cfg);

// Divergence scan over one system parameter. Extra file: scan.csv.
JobOutput run_sweep(const JobConfig& cfg);

JobOutput run_job(const JobConfig& cfg);

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

}  // namespace lindet::cli
