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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "cli/acceptance.hpp"
#include "qthermo/oracle.hpp"

namespace qthermo::cli {

namespace {

constexpr double kOracleThetaTol = 1e-12;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string format_complex(Complex z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im == 0.0) return fmt("%.10g", re);
  if (re == 0.0) return fmt("%.10gi", im);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", re, im);
  return buf;
}

double max_abs_column_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

SimulationResult run_simulation(const ExperimentConfig& config) {
  config.validate();
  const ChannelSpec& spec = *config.channel;
  const DensityOperator rho0 = prepare_pure_state(InitialStatePrep(*config.theta, config.phi));
  const Hamiltonian h = Hamiltonian::diagonal({config.energy_ground, config.energy_excited});
  const TimeGrid grid(config.tau_max, config.steps);

  // Decide oracle applicability before spending time on the trajectory.
  std::optional<oracle::OracleConfig> oracle_cfg;
  if (config.emit_oracle) {
    const bool known = spec.kind() == ChannelKind::PhaseDamping || spec.kind() == ChannelKind::PhaseFlip;
    if (!known) throw ConfigError("oracle columns exist only for phase-damping and phase-flip");
    if (std::abs(*config.theta - std::numbers::pi / 6.0) > kOracleThetaTol) {
      throw ConfigError("oracle columns require theta = pi/6");
    }
    if (config.energy_excited < config.energy_ground) throw ConfigError("oracle columns require e_e >= e_g");
    oracle_cfg.emplace(config.energy_ground, config.energy_excited, *config.theta);
  }

  SimulationResult result{run_first_law(spec, rho0, h, grid), std::nullopt};
  if (oracle_cfg) {
    OracleColumns cols;
    const bool pd = spec.kind() == ChannelKind::PhaseDamping;
    for (double tau : result.ledger.tau) {
      cols.heat.push_back(pd ? oracle::pd_heat(tau, *oracle_cfg) : oracle::pf_heat(tau, *oracle_cfg));
      cols.coherence.push_back(pd ? oracle::pd_coherence(tau, *oracle_cfg) : oracle::pf_coherence(tau, *oracle_cfg));
    }
    result.oracle = std::move(cols);
  }
  return result;
}

ExperimentConfig figure_config(Figure figure) {
  ExperimentConfig cfg;
  const ChannelKind kind = figure == Figure::Fig2 ? ChannelKind::PhaseDamping : ChannelKind::PhaseFlip;
  cfg.channel = ChannelSpec::builtin(kind);
  cfg.channel_label = std::string(channel_name(kind));
  cfg.theta = std::numbers::pi / 6.0;
  cfg.energy_ground = 0.0;
  cfg.energy_excited = 1.0;
  cfg.tau_max = kDefaultTauMax;
  cfg.steps = kDefaultSteps;
  cfg.emit_oracle = true;
  return cfg;
}

std::string_view figure_name(Figure figure) { return figure == Figure::Fig2 ? "fig2" : "fig3"; }

int cmd_simulate(const ExperimentConfig& config, const std::filesystem::path& out_path, Streams io) {
  try {
    const SimulationResult res = run_simulation(config);
    write_file(out_path, trajectory_csv(res.ledger, res.oracle ? &*res.oracle : nullptr));
    const auto& led = res.ledger;
    const std::size_t last = led.size() - 1;
    io.out << "tau=" << format_value(led.tau[last]) << " U=" << format_value(led.delta_u[last])
           << " W=" << format_value(led.work[last]) << " Q=" << format_value(led.heat[last])
           << " C=" << format_value(led.coherence[last]) << " residual=" << format_value(led.closure_residual())
           << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TrajectoryError& e) {
    io.err << "numeric error " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    io.err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int cmd_reproduce(Figure figure, const std::filesystem::path& out_dir, Streams io) {
  const ExperimentConfig cfg = figure_config(figure);
  const std::string name(figure_name(figure));
  try {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    const SimulationResult res = run_simulation(cfg);
    const auto& led = res.ledger;
    const auto& orc = *res.oracle;
    write_file(out_dir / (name + ".csv"), trajectory_csv(led, &orc));

    std::vector<double> q_plus_c(led.size());
    std::vector<double> zero(led.size(), 0.0);
    for (std::size_t i = 0; i < led.size(); ++i) q_plus_c[i] = led.heat[i] + led.coherence[i];
    const auto peak = static_cast<std::size_t>(std::max_element(led.heat.begin(), led.heat.end()) - led.heat.begin());

    std::ostringstream rep;
    rep << name << ": " << cfg.channel_label << ", theta=pi/6, e_g=0, e_e=1, tau in [0, 8], " << cfg.steps
        << " steps\n";
    rep << "max |heat - heat_oracle|           " << format_value(max_abs_column_diff(led.heat, orc.heat)) << '\n';
    rep << "max |coherence - coherence_oracle| " << format_value(max_abs_column_diff(led.coherence, orc.coherence))
        << '\n';
    rep << "max |heat + coherence|             " << format_value(max_abs_column_diff(q_plus_c, zero)) << '\n';
    rep << "max |delta_u|                      " << format_value(max_abs_column_diff(led.delta_u, zero)) << '\n';
    rep << "max |work|                         " << format_value(max_abs_column_diff(led.work, zero)) << '\n';
    rep << "first-law residual                 " << format_value(led.closure_residual()) << '\n';
    rep << "peak heat                          " << format_value(led.heat[peak]) << " at tau="
        << format_value(led.tau[peak]) << '\n';
    rep << "final heat                         " << format_value(led.heat.back()) << '\n';
    write_file(out_dir / (name + "_report.txt"), rep.str());

    io.out << rep.str();
    return kExitOk;
  } catch (const TrajectoryError& e) {
    io.err << "numeric error " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    io.err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int cmd_verify(std::optional<double> tol, Streams io) {
  AcceptanceOptions opts;
  opts.quadrature_tol = tol;
  const auto criteria = run_acceptance(opts);
  bool all = true;
  for (const auto& c : criteria) {
    io.out << describe(c, true);
    all = all && c.pass();
  }
  io.out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all ? kExitOk : kExitVerificationFailed;
}

int cmd_channel_info(const ChannelSpec& spec, double t, Streams io) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    io.err << "error: t must be a finite non-negative time\n";
    return kExitUsage;
  }
  try {
    const KrausSet set = kraus_at(spec, t);
    io.out << channel_name(spec.kind()) << " at t=" << fmt("%.10g", t) << ", rate=" << fmt("%.10g", spec.rate())
           << '\n';
    for (std::size_t i = 0; i < set.operators.size(); ++i) {
      const Matrix& k = set.operators[i];
      io.out << "K" << i << " =\n";
      for (std::size_t r = 0; r < k.rows(); ++r) {
        io.out << "  [";
        for (std::size_t c = 0; c < k.cols(); ++c) io.out << (c ? ", " : " ") << format_complex(k(r, c));
        io.out << " ]\n";
      }
    }
    const CptpReport rep = validate_cptp(set);
    io.out << "cptp deviation " << format_value(rep.deviation) << (rep.pass ? " (ok)" : " (NOT CPTP)") << '\n';
    return rep.pass ? kExitOk : kExitVerificationFailed;
  } catch (const Error& e) {
    io.err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace qthermo::cli
