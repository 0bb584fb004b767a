// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "cli/config.hpp"
#include "cli/csv.hpp"

namespace qthermo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

enum class Figure { Fig2, Fig3 };

struct SimulationResult {
  EnergeticsLedger ledger;
  std::optional<OracleColumns> oracle;
};

/// Runs the configured experiment. Throws ConfigError when the oracle is
/// requested for a setup it does not cover, qthermo::Error on numeric failure.
SimulationResult run_simulation(const ExperimentConfig& config);

/// Figure presets: theta = pi/6, E_g = 0, E_e = 1, tau in [0, 8], 4000 steps, oracle on.
/// fig2 is phase damping, fig3 is phase flip.
ExperimentConfig figure_config(Figure figure);
std::string_view figure_name(Figure figure);

int cmd_simulate(const ExperimentConfig& config, const std::filesystem::path& out_path, Streams io);
/// Writes <fig>.csv and <fig>_report.txt into out_dir (created if missing).
int cmd_reproduce(Figure figure, const std::filesystem::path& out_dir, Streams io);
/// Runs the acceptance suite. `tol` replaces the tolerance of the quadrature checks.
int cmd_verify(std::optional<double> tol, Streams io);
int cmd_channel_info(const ChannelSpec& spec, double t, Streams io);

}  // namespace qthermo::cli
