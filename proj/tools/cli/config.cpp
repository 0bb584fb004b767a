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

#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>

namespace qthermo::cli {

namespace {

using nlohmann::json;

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError("invalid " + what + ": '" + text + "'");
  return v;
}

std::string entry_source(const json& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number()) return e.dump();
  throw ConfigError("Kraus entries must be expression strings or numbers");
}

ChannelKind kind_from_name(std::string name) {
  for (auto& c : name) {
    if (c == '_') c = '-';
  }
  if (name == "phase-damping") return ChannelKind::PhaseDamping;
  if (name == "phase-flip") return ChannelKind::PhaseFlip;
  if (name == "bit-flip") return ChannelKind::BitFlip;
  if (name == "bit-phase-flip") return ChannelKind::BitPhaseFlip;
  if (name == "custom") return ChannelKind::Custom;
  throw ConfigError("unknown channel '" + name + "'");
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

double number_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  throw ConfigError(std::string("'") + key + "' must be a number");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!channel) throw ConfigError("no channel given");
  if (!theta) throw ConfigError("no theta given");
  if (steps < kMinSteps) {
    throw ConfigError("steps must be at least " + std::to_string(kMinSteps) + ", got " + std::to_string(steps));
  }
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ConfigError("tau_max must be positive");
  try {
    InitialStatePrep prep(*theta, phi);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  if (channel->dim() != 2) throw ConfigError("channels must act on a qubit (dim 2)");
}

double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*(?:([0-9.eE+-]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double factor = m[1].matched ? parse_real(m[1].str(), "angle") : 1.0;
    const double divisor = m[2].matched ? parse_real(m[2].str(), "angle") : 1.0;
    if (divisor == 0.0) throw ConfigError("invalid angle: '" + text + "'");
    return factor * std::numbers::pi / divisor;
  }
  return parse_real(text, "angle");
}

ChannelSpec parse_channel_descriptor(const std::string& text) {
  constexpr std::string_view prefix = "custom:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string path = text.substr(prefix.size());
    if (path.empty()) throw ConfigError("custom channel needs a file: custom:<file>");
    return load_custom_channel(path);
  }
  const ChannelKind kind = kind_from_name(text);
  if (kind == ChannelKind::Custom) throw ConfigError("custom channel needs a file: custom:<file>");
  return ChannelSpec::builtin(kind);
}

ChannelSpec channel_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_channel_descriptor(j.get<std::string>());
    if (!j.is_object()) throw ConfigError("channel must be a string or an object");

    const ChannelKind kind = kind_from_name(j.at("kind").get<std::string>());
    const double rate = j.contains("rate") ? number_field(j, "rate") : 1.0;
    if (kind != ChannelKind::Custom) return ChannelSpec::builtin(kind, rate);

    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<ExprMatrix> ops;
    for (const json& mat : j.at("kraus")) {
      std::vector<std::vector<std::pair<std::string, std::string>>> rows;
      for (const json& row : mat) {
        auto& r = rows.emplace_back();
        for (const json& entry : row) {
          if (!entry.is_array() || entry.size() != 2) throw ConfigError("each Kraus entry must be [re, im]");
          r.emplace_back(entry_source(entry[0]), entry_source(entry[1]));
        }
      }
      ExprMatrix m = ExprMatrix::parse(rows);
      if (m.dim != dim) throw ConfigError("Kraus operator dimension differs from dim");
      ops.push_back(std::move(m));
    }
    return ChannelSpec::custom(std::move(ops), rate);
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
}

ChannelSpec load_custom_channel(const std::filesystem::path& path) {
  const json j = read_json(path);
  if (!j.is_object() || j.value("kind", "") != "custom") {
    throw ConfigError(path.string() + ": expected an object with \"kind\": \"custom\"");
  }
  try {
    return channel_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const char* known[] = {"channel", "theta", "phi", "e_g", "e_e", "tau_max", "steps", "emit_oracle"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    if (j.contains("channel")) {
      cfg.channel = channel_from_json(j["channel"]);
      cfg.channel_label =
          j["channel"].is_string() ? j["channel"].get<std::string>() : std::string(channel_name(cfg.channel->kind()));
    }
    auto angle = [&](const char* key) {
      const json& v = j.at(key);
      if (v.is_string()) return parse_angle(v.get<std::string>());
      return number_field(j, key);
    };
    if (j.contains("theta")) cfg.theta = angle("theta");
    if (j.contains("phi")) cfg.phi = angle("phi");
    if (j.contains("e_g")) cfg.energy_ground = number_field(j, "e_g");
    if (j.contains("e_e")) cfg.energy_excited = number_field(j, "e_e");
    if (j.contains("tau_max")) cfg.tau_max = number_field(j, "tau_max");
    if (j.contains("steps")) {
      const json& s = j["steps"];
      if (!s.is_number_integer() || s.get<long long>() < 0) throw ConfigError("'steps' must be a non-negative integer");
      cfg.steps = s.get<std::size_t>();
    }
    if (j.contains("emit_oracle")) cfg.emit_oracle = j["emit_oracle"].get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  try {
    return config_from_json(read_json(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace qthermo::cli
