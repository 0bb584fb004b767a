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

#include "qthermo/oracle.hpp"

#include <cmath>
#include <numbers>

namespace qthermo::oracle {

namespace {

void require_two_level(const DensityOperator& rho0) {
  if (rho0.dim() != 2) throw ShapeError("oracle: closed forms are two-level only");
}

// Eigensystem of [[a, s*rho01], [s*rho10, d]] written the way the appendix
// does: discriminant m and unnormalized vectors (a - d +/- sqrt(m), 2 s rho10).
TwoLevelEigensystem two_level(const DensityOperator& rho0, double s) {
  require_two_level(rho0);
  const Matrix& r = rho0.matrix();
  const double a = r(0, 0).real();
  const double d = r(1, 1).real();
  const Complex rho10 = r(1, 0);
  const double factor = s * s;

  TwoLevelEigensystem out;
  out.intermediates.channel_factor = factor;
  out.intermediates.m = a * a - 2.0 * a * d + d * d + 4.0 * factor * std::norm(rho10);
  const double root = std::sqrt(out.intermediates.m);
  out.values = {0.5 * (a + d + root), 0.5 * (a + d - root)};

  const Complex lower = 2.0 * s * rho10;
  const double first[2] = {a - d + root, a - d - root};
  const double norm2[2] = {(d - a - root) * (d - a - root) + 4.0 * factor * std::norm(rho10),
                           (d - a + root) * (d - a + root) + 4.0 * factor * std::norm(rho10)};
  out.vectors = Matrix(2, 2);
  if (norm2[0] == 0.0 || norm2[1] == 0.0) {
    // Only reachable when the state is already diagonal.
    const bool ground_larger = a >= d;
    out.vectors(0, 0) = ground_larger ? 1.0 : 0.0;
    out.vectors(1, 0) = ground_larger ? 0.0 : 1.0;
    out.vectors(0, 1) = ground_larger ? 0.0 : 1.0;
    out.vectors(1, 1) = ground_larger ? 1.0 : 0.0;
    return out;
  }
  for (int j = 0; j < 2; ++j) {
    const double inv = 1.0 / std::sqrt(norm2[j]);
    out.vectors(0, j) = first[j] * inv;
    out.vectors(1, j) = lower * inv;
  }
  return out;
}

Matrix scaled_state(const DensityOperator& rho0, double s) {
  require_two_level(rho0);
  Matrix m = rho0.matrix();
  m(0, 1) *= s;
  m(1, 0) *= s;
  return m;
}

double pd_scale(double tau) { return std::exp(-0.5 * tau); }
double pf_scale(double tau) { return 2.0 * std::exp(-tau) - 1.0; }

double checked_log(double x) {
  if (!(x > 0.0)) throw NumericError("oracle: logarithm of non-positive argument");
  return std::log(x);
}

}  // namespace

OracleConfig::OracleConfig(double energy_ground, double energy_excited, double theta)
    : eg_(energy_ground), ee_(energy_excited), theta_(theta) {
  if (energy_excited < energy_ground) throw ValidationError("oracle: requires E_e >= E_g");
  if (std::abs(theta - std::numbers::pi / 6.0) > 1e-12) {
    throw ValidationError("oracle: heat/coherence closed forms exist only for theta = pi/6");
  }
}

OracleConfig default_config() { return OracleConfig(0.0, 1.0, std::numbers::pi / 6.0); }

TwoLevelEigensystem pd_eigensystem(double tau, const DensityOperator& rho0) { return two_level(rho0, pd_scale(tau)); }

TwoLevelEigensystem pf_eigensystem(double tau, const DensityOperator& rho0) { return two_level(rho0, pf_scale(tau)); }

Matrix pd_state(double tau, const DensityOperator& rho0) { return scaled_state(rho0, pd_scale(tau)); }

Matrix pf_state(double tau, const DensityOperator& rho0) { return scaled_state(rho0, pf_scale(tau)); }

double pd_heat(double tau, const OracleConfig& cfg) {
  const double gap = cfg.energy_excited() - cfg.energy_ground();
  return gap / 8.0 * (tau + std::log(4.0) - std::log(3.0 + std::exp(tau)));
}

double pd_coherence(double tau, const OracleConfig& cfg) {
  const double gap = cfg.energy_excited() - cfg.energy_ground();
  return gap / 8.0 * (-tau - std::log(4.0) + std::log(3.0 + std::exp(tau)));
}

double pf_heat(double tau, const OracleConfig& cfg) {
  const double eg = cfg.energy_ground();
  const double ee = cfg.energy_excited();
  const double x = std::exp(2.0 * tau) - 3.0 * std::exp(tau) + 3.0;
  if (!(x > 0.0)) throw NumericError("oracle: square root of non-positive argument");
  const double root_term = 4.0 * std::exp(-tau) * std::sqrt(x);
  const double log_x = checked_log(x);
  const double log_y = checked_log(3.0 * std::exp(-2.0 * tau) - 3.0 * std::exp(-tau) + 1.0);
  return eg / 16.0 * (-4.0 + root_term - 2.0 * tau + log_x) +
         eg / 16.0 * (4.0 - root_term - 2.0 * tau + log_x) +
         ee / 16.0 * (-4.0 + root_term - log_y) +
         ee / 16.0 * (4.0 - root_term - log_y);
}

double pf_coherence(double tau, const OracleConfig& cfg) {
  const double eg = cfg.energy_ground();
  const double ee = cfg.energy_excited();
  const double x = 3.0 - 3.0 * std::exp(tau) + std::exp(2.0 * tau);
  if (!(x > 0.0)) throw NumericError("oracle: square root of non-positive argument");
  const double log_x = checked_log(x);
  const double ratio = std::exp(tau) / std::sqrt(x);
  return eg / 16.0 * (1.0 + 2.0 * tau - log_x - ratio) +
         eg / 16.0 * (-1.0 + 2.0 * tau - log_x + ratio) +
         ee / 16.0 * (-1.0 - 2.0 * tau + log_x + ratio) +
         ee / 16.0 * (1.0 - 2.0 * tau + log_x - ratio);
}

double pf_heat_reduced(double tau, const OracleConfig& cfg) {
  const double gap = cfg.energy_excited() - cfg.energy_ground();
  return gap / 8.0 * -checked_log(1.0 + 3.0 * std::exp(-2.0 * tau) - 3.0 * std::exp(-tau));
}

}  // namespace qthermo::oracle
