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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qthermo/cxmat.hpp"
#include "qthermo/exprparse.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

enum class ChannelKind { PhaseDamping, PhaseFlip, BitFlip, BitPhaseFlip, Custom };

/// CLI spelling: phase-damping, phase-flip, bit-flip, bit-phase-flip, custom.
std::string_view channel_name(ChannelKind kind);

struct ComplexExpr {
  expr::Expression re;
  expr::Expression im;
};

/// d x d matrix of expressions over t, row-major.
struct ExprMatrix {
  std::size_t dim = 0;
  std::vector<ComplexExpr> entries;

  Matrix eval(double t) const;

  /// Square matrix of (real, imag) source strings; ShapeError if ragged.
  static ExprMatrix parse(const std::vector<std::vector<std::pair<std::string, std::string>>>& rows);
  static ExprMatrix constant(const Matrix& m);
};

/// A family of Kraus sets parameterized by time.
///
/// Builtins are two-level channels with strength 1 - exp(-rate * t); the map
/// always takes rho(0) straight to rho(t), never composed from short steps.
class ChannelSpec {
 public:
  static ChannelSpec builtin(ChannelKind kind, double rate = 1.0);
  static ChannelSpec custom(std::vector<ExprMatrix> kraus, double rate = 1.0);

  ChannelKind kind() const noexcept { return kind_; }
  double rate() const noexcept { return rate_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ExprMatrix>& custom_kraus() const noexcept { return custom_; }

 private:
  ChannelSpec(ChannelKind kind, double rate, std::size_t dim, std::vector<ExprMatrix> custom);

  ChannelKind kind_;
  double rate_;
  std::size_t dim_;
  std::vector<ExprMatrix> custom_;
};

struct KrausSet {
  std::vector<Matrix> operators;
  double time_label = 0.0;
};

struct CptpReport {
  double deviation = 0.0;  // max |sum K^dagger K - I|
  bool pass = false;
};

inline constexpr double kCptpApplyTol = 1e-10;

/// Thrown when a Kraus set is refused for failing the completeness relation.
class CptpError : public ValidationError {
 public:
  CptpError(const std::string& what, CptpReport report, double time)
      : ValidationError(what), report_(report), time_(time) {}
  const CptpReport& report() const noexcept { return report_; }
  double time() const noexcept { return time_; }

 private:
  CptpReport report_;
  double time_;
};

/// Expression errors are rethrown as NumericError naming the operator, entry and time.
KrausSet kraus_at(const ChannelSpec& spec, double t);

CptpReport validate_cptp(const KrausSet& set, double tol = 1e-12);

/// sum_i K_i rho K_i^dagger. Refuses sets that fail validate_cptp at kCptpApplyTol.
DensityOperator apply(const KrausSet& set, const DensityOperator& rho);

DensityOperator evolve(const ChannelSpec& spec, const DensityOperator& rho0, double t);

}  // namespace qthermo
