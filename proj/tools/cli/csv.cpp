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

#include "cli/csv.hpp"

#include <cstdio>
#include <fstream>

namespace qthermo::cli {

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string trajectory_csv(const EnergeticsLedger& ledger, const OracleColumns* oracle) {
  if (oracle != nullptr && (oracle->heat.size() != ledger.size() || oracle->coherence.size() != ledger.size())) {
    throw std::invalid_argument("oracle columns do not match the ledger length");
  }
  std::string out = kCsvHeader;
  if (oracle != nullptr) out += kCsvOracleHeader;
  out += '\n';
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    for (double v : {ledger.tau[i], ledger.delta_u[i], ledger.work[i], ledger.heat[i]}) {
      out += format_value(v);
      out += ',';
    }
    out += format_value(ledger.coherence[i]);
    if (oracle != nullptr) {
      out += ',';
      out += format_value(oracle->heat[i]);
      out += ',';
      out += format_value(oracle->coherence[i]);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace qthermo::cli
