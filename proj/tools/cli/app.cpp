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

#include "cli/app.hpp"

#include <cmath>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace qthermo::cli {

namespace {

struct SimulateArgs {
  std::string config;
  std::string channel;
  std::string theta;
  std::string phi;
  double eg = 0.0;
  double ee = 1.0;
  double tau_max = kDefaultTauMax;
  long long steps = 0;
  bool emit_oracle = false;
  std::string out;
};

/// Config file first, then every flag the user actually passed.
ExperimentConfig build_config(const CLI::App& cmd, const SimulateArgs& a) {
  ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
  if (cmd.count("--channel")) {
    cfg.channel = parse_channel_descriptor(a.channel);
    cfg.channel_label = a.channel;
  }
  if (cmd.count("--theta")) cfg.theta = parse_angle(a.theta);
  if (cmd.count("--phi")) cfg.phi = parse_angle(a.phi);
  if (cmd.count("--eg")) cfg.energy_ground = a.eg;
  if (cmd.count("--ee")) cfg.energy_excited = a.ee;
  if (cmd.count("--tau-max")) cfg.tau_max = a.tau_max;
  if (cmd.count("--steps")) {
    if (a.steps < 0) throw ConfigError("steps must be non-negative");
    cfg.steps = static_cast<std::size_t>(a.steps);
  }
  if (cmd.count("--emit-oracle")) cfg.emit_oracle = true;
  cfg.validate();
  return cfg;
}

/// A time given as a number or a constant expression such as "log(4)".
double parse_time(const std::string& text) {
  try {
    const auto e = expr::parse(text);
    if (!e.is_constant()) throw ConfigError("time must not depend on t: '" + text + "'");
    return expr::eval(e, 0.0);
  } catch (const expr::ExprError& ex) {
    throw ConfigError("invalid time '" + text + "': " + ex.what());
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Work, heat and coherence along Kraus-channel trajectories of a qubit", "qthermo"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate the first law along one trajectory and write CSV");
  simulate->add_option("--config", sim.config, "JSON config file (flags override its values)")->check(CLI::ExistingFile);
  simulate->add_option("--channel", sim.channel,
                       "phase-damping | phase-flip | bit-flip | bit-phase-flip | custom:<file>");
  simulate->add_option("--theta", sim.theta, "Initial polar angle in radians, or a pi form such as pi/6");
  simulate->add_option("--phi", sim.phi, "Initial relative phase in radians (default 0)");
  simulate->add_option("--eg", sim.eg, "Ground energy (default 0)");
  simulate->add_option("--ee", sim.ee, "Excited energy (default 1)");
  simulate->add_option("--tau-max", sim.tau_max, "Final dimensionless time (default 8)");
  simulate->add_option("--steps", sim.steps, "Grid intervals, at least 10 (default 4000)");
  simulate->add_flag("--emit-oracle", sim.emit_oracle, "Add closed-form heat and coherence columns");
  simulate->add_option("--out", sim.out, "Output CSV path")->required();

  std::string figure;
  std::string out_dir = ".";
  auto* reproduce = app.add_subcommand("reproduce", "Write the data and report for a figure preset");
  reproduce->add_option("figure", figure, "fig2 (phase damping) or fig3 (phase flip)")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3"}));
  reproduce->add_option("--out-dir", out_dir, "Output directory (default .)");

  double tol = 0.0;
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--tol", tol, "Tolerance for the quadrature-accuracy checks");

  std::string info_channel;
  std::string info_time = "0";
  auto* info = app.add_subcommand("channel-info", "Print the Kraus operators at one time");
  info->add_option("--channel", info_channel, "Channel descriptor, as for simulate")->required();
  info->add_option("--t", info_time, "Time, a number or constant expression such as log(4) (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  const Streams io{out, err};
  try {
    if (*simulate) return cmd_simulate(build_config(*simulate, sim), sim.out, io);
    if (*reproduce) return cmd_reproduce(figure == "fig2" ? Figure::Fig2 : Figure::Fig3, out_dir, io);
    if (*verify) {
      if (verify->count("--tol") && !(tol > 0.0 && std::isfinite(tol))) {
        throw ConfigError("--tol must be a positive number");
      }
      return cmd_verify(verify->count("--tol") ? std::optional<double>(tol) : std::nullopt, io);
    }
    if (*info) return cmd_channel_info(parse_channel_descriptor(info_channel), parse_time(info_time), io);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qthermo::cli
