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
#include <stdexcept>
#include <string>
#include <vector>

#include "qthermo/firstlaw.hpp"

namespace qthermo::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleColumns {
  std::vector<double> heat;
  std::vector<double> coherence;
};

inline constexpr const char* kCsvHeader = "tau,delta_u,work,heat,coherence";
inline constexpr const char* kCsvOracleHeader = ",heat_oracle,coherence_oracle";

/// 12 significant digits, scientific, lowercase e. Negative zero prints as zero.
std::string format_value(double v);

/// Header plus one LF-terminated row per grid point.
std::string trajectory_csv(const EnergeticsLedger& ledger, const OracleColumns* oracle = nullptr);

/// Writes bytes verbatim (no newline translation).
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace qthermo::cli
