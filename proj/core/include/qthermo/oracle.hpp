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

// Closed-form two-level results for phase damping and phase flip, used as
// ground truth for the numerical pipeline. Heat and coherence closed forms
// hold only for the initial state with theta = pi/6.

#include <array>

#include "qthermo/cxmat.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo::oracle {

struct Intermediates {
  double m = 0.0;               // eigenvalue discriminant
  double channel_factor = 0.0;  // squared off-diagonal scale at tau
};

struct TwoLevelEigensystem {
  /// values[0] >= values[1].
  std::array<double, 2> values{};
  /// Column j pairs with values[j].
  Matrix vectors;
  Intermediates intermediates;
};

/// Config for the heat/coherence closed forms. Throws ValidationError when
/// energy_excited < energy_ground or theta differs from pi/6.
class OracleConfig {
 public:
  OracleConfig(double energy_ground, double energy_excited, double theta);

  double energy_ground() const noexcept { return eg_; }
  double energy_excited() const noexcept { return ee_; }
  double theta() const noexcept { return theta_; }

 private:
  double eg_;
  double ee_;
  double theta_;
};

/// Figure preset: theta = pi/6, E_g = 0, E_e = 1.
OracleConfig default_config();

/// Eigensystem of the phase-damped state: rho01 scaled by e^{-tau/2}.
TwoLevelEigensystem pd_eigensystem(double tau, const DensityOperator& rho0);

/// Eigensystem of the phase-flipped state: rho01 scaled by (2 e^{-tau} - 1).
/// Derived from the general 2x2 closed form with the unsquared factor.
TwoLevelEigensystem pf_eigensystem(double tau, const DensityOperator& rho0);

/// Phase-damped density matrix at tau.
Matrix pd_state(double tau, const DensityOperator& rho0);
/// Phase-flipped density matrix at tau.
Matrix pf_state(double tau, const DensityOperator& rho0);

double pd_heat(double tau, const OracleConfig& cfg);
double pd_coherence(double tau, const OracleConfig& cfg);

/// Four-bracket form for general (E_g, E_e).
double pf_heat(double tau, const OracleConfig& cfg);
double pf_coherence(double tau, const OracleConfig& cfg);

/// Reduced form (E_e - E_g)/8 * -log(1 + 3e^{-2 tau} - 3e^{-tau}).
double pf_heat_reduced(double tau, const OracleConfig& cfg);

}  // namespace qthermo::oracle
