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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qthermo/channel.hpp"
#include "qthermo/firstlaw.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo::cli {

/// Bad flags, bad config files, or a config that fails validation. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinSteps = 10;

struct ExperimentConfig {
  std::optional<ChannelSpec> channel;
  std::string channel_label;
  std::optional<double> theta;
  double phi = 0.0;
  double energy_ground = 0.0;
  double energy_excited = 1.0;
  double tau_max = kDefaultTauMax;
  std::size_t steps = kDefaultSteps;
  bool emit_oracle = false;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

/// Radians, or a multiple of pi written as "pi", "pi/6", "2*pi/3", "0.5*pi".
double parse_angle(const std::string& text);

/// "phase-damping", "phase-flip", "bit-flip", "bit-phase-flip" or "custom:<file>".
ChannelSpec parse_channel_descriptor(const std::string& text);

/// {"kind": "custom", "dim": d, "kraus": [[[[re, im], ...], ...], ...], "rate": r?}
/// Entries are expression strings (numbers are accepted too).
ChannelSpec channel_from_json(const nlohmann::json& j);
ChannelSpec load_custom_channel(const std::filesystem::path& path);

/// Reads an ExperimentConfig JSON file (snake_case keys). Unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace qthermo::cli
