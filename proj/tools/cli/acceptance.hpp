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
#include <string>
#include <vector>

namespace qthermo::cli {

/// One measured quantity and the bounds it must fall in.
struct Check {
  std::string label;
  double measured = 0.0;
  double lower = 0.0;  // only used by range checks
  double upper = 0.0;
  bool range = false;
  bool pass = false;
};

struct Criterion {
  int number = 0;
  std::string title;
  std::vector<Check> checks;
  std::string error;  // set when the criterion threw before finishing

  bool pass() const;
};

struct AcceptanceOptions {
  /// Replaces the tolerance of every quadrature-accuracy check (closed-form
  /// comparisons and first-law closure). Structural checks keep their own.
  std::optional<double> quadrature_tol;
  /// Scratch space for the determinism check; defaults to the system temp dir.
  std::optional<std::filesystem::path> scratch_dir;
};

/// Runs criteria 1..12 in order.
std::vector<Criterion> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3  title" plus, when verbose, one indented line per check.
/// The non-verbose form packs the measured values onto the same line.
std::string describe(const Criterion& c, bool verbose);

}  // namespace qthermo::cli
