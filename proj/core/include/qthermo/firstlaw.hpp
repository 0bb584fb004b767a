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
#include <vector>

#include "qthermo/channel.hpp"
#include "qthermo/cxmat.hpp"
#include "qthermo/qstate.hpp"

namespace qthermo {

/// Uniform grid tau_i = i * tau_max / steps, i = 0..steps, in units of 1/rate.
class TimeGrid {
 public:
  TimeGrid(double tau_max, std::size_t steps);

  double tau_max() const noexcept { return tau_max_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_ + 1; }
  double operator[](std::size_t i) const;
  std::vector<double> points() const;

 private:
  double tau_max_;
  std::size_t steps_;
};

inline constexpr double kDefaultTauMax = 8.0;
inline constexpr std::size_t kDefaultSteps = 4000;
inline constexpr std::size_t kMaxMatchDim = 8;

/// Eigenpairs in branch order: column k of `vectors` pairs with values[k].
struct EigenPairs {
  std::vector<double> values;
  Matrix vectors;
};

struct SpectralSnapshot {
  double tau = 0.0;
  double time = 0.0;  // tau / rate
  DensityOperator rho;
  std::vector<double> eigenvalues;  // rho_k, branch order
  Matrix eigenvectors;              // |k>, branch order
  std::vector<double> energies;     // E_n
  /// overlap[n][k] = |<n|k>|^2, row n over energy levels.
  std::vector<std::vector<double>> overlap;
};

struct SpectralTrajectory {
  TimeGrid grid;
  double rate = 1.0;
  std::vector<SpectralSnapshot> snapshots;
};

/// Permutation perm such that cur branch perm[k] continues prev branch k.
///
/// Exhaustive search maximizing sum_k |<prev_k|cur_perm[k]>|^2, ties broken
/// by the smallest sum_k |prev_k - cur_perm[k]| over eigenvalues. Throws
/// UnsupportedDimension for d > kMaxMatchDim.
std::vector<std::size_t> branch_match(const EigenPairs& prev, const EigenPairs& cur);

/// Errors raised while building a trajectory, tagged with the grid time.
class TrajectoryError : public Error {
 public:
  TrajectoryError(const std::string& what, double tau) : Error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Evolves rho0 across the grid, diagonalizes each state, and keeps the
/// eigenbranches continuous. Eigenvectors of an exactly degenerate cluster are
/// taken from the previous snapshot (projected into the cluster's eigenspace).
SpectralTrajectory spectral_trajectory(const ChannelSpec& spec, const DensityOperator& rho0, const Hamiltonian& h,
                                       const TimeGrid& grid);

/// Cumulative energetics; all columns start at 0 and have one entry per grid point.
struct EnergeticsLedger {
  std::vector<double> tau;
  std::vector<double> delta_u;
  std::vector<double> work;
  std::vector<double> heat;
  std::vector<double> coherence;

  std::size_t size() const noexcept { return tau.size(); }
  /// max_i |delta_u - (work + heat + coherence)|.
  double closure_residual() const;
};

/// Integrates dW, dQ, dC interval by interval with endpoint-averaged factors:
///
///   dW = sum_nk  avg(rho_k) avg(O_nk) diff(E_n)
///   dQ = sum_nk  avg(E_n)   avg(O_nk) diff(rho_k)
///   dC = sum_nk  avg(E_n)   avg(rho_k) diff(O_nk)
///
/// delta_u is not integrated: it is Tr(rho(t) H(t)) - Tr(rho(0) H(0)).
EnergeticsLedger integrate_first_law(const SpectralTrajectory& traj, const Hamiltonian& h);

/// spectral_trajectory followed by integrate_first_law.
EnergeticsLedger run_first_law(const ChannelSpec& spec, const DensityOperator& rho0, const Hamiltonian& h,
                               const TimeGrid& grid);

}  // namespace qthermo
