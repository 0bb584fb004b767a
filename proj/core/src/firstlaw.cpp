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

#include "qthermo/firstlaw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>

namespace qthermo {

namespace {

constexpr double kDegeneracyTol = 1e-12;
constexpr double kScoreTieTol = 1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

EigenPairs permuted(const EigenPairs& p, const std::vector<std::size_t>& perm) {
  const std::size_t d = p.values.size();
  EigenPairs out{std::vector<double>(d), Matrix(d, d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = p.values[perm[k]];
    for (std::size_t r = 0; r < d; ++r) out.vectors(r, k) = p.vectors(r, perm[k]);
  }
  return out;
}

// Replaces the vectors of each exactly degenerate cluster in `cur` with the
// previous branch vectors projected into that cluster's eigenspace.
void inherit_degenerate_vectors(const EigenPairs& prev, EigenPairs& cur) {
  const std::size_t d = cur.values.size();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cur.values[a] < cur.values[b]; });

  std::size_t start = 0;
  while (start < d) {
    std::size_t end = start + 1;
    while (end < d && cur.values[order[end]] - cur.values[order[end - 1]] <= kDegeneracyTol) ++end;
    if (end - start >= 2) {
      std::vector<std::size_t> cluster(order.begin() + start, order.begin() + end);
      std::sort(cluster.begin(), cluster.end());
      std::vector<std::vector<Complex>> span;
      for (auto k : cluster) span.push_back(cur.vectors.column(k));

      std::vector<std::vector<Complex>> chosen;
      for (auto k : cluster) {
        const auto pk = prev.vectors.column(k);
        std::vector<Complex> w(d);
        for (const auto& s : span) {
          const Complex c = inner(s, pk);
          for (std::size_t r = 0; r < d; ++r) w[r] += c * s[r];
        }
        for (const auto& q : chosen) {
          const Complex c = inner(q, w);
          for (std::size_t r = 0; r < d; ++r) w[r] -= c * q[r];
        }
        const double norm = std::sqrt(std::real(inner(w, w)));
        if (norm < 1e-8) break;
        for (auto& x : w) x /= norm;
        chosen.push_back(std::move(w));
      }
      if (chosen.size() == cluster.size()) {
        for (std::size_t i = 0; i < cluster.size(); ++i) {
          for (std::size_t r = 0; r < d; ++r) cur.vectors(r, cluster[i]) = chosen[i][r];
        }
      }
    }
    start = end;
  }
}

std::vector<std::vector<double>> overlap_matrix(const Matrix& energy_basis, const Matrix& state_basis) {
  const std::size_t d = energy_basis.rows();
  std::vector<std::vector<double>> o(d, std::vector<double>(d));
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t k = 0; k < d; ++k) {
      Complex c{};
      for (std::size_t r = 0; r < d; ++r) c += std::conj(energy_basis(r, n)) * state_basis(r, k);
      o[n][k] = std::norm(c);
    }
  }
  return o;
}

}  // namespace

TimeGrid::TimeGrid(double tau_max, std::size_t steps) : tau_max_(tau_max), steps_(steps) {
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ValidationError("tau_max must be positive");
  if (steps == 0) throw ValidationError("grid needs at least one step");
}

double TimeGrid::operator[](std::size_t i) const {
  return tau_max_ * static_cast<double>(i) / static_cast<double>(steps_);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> p(size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (*this)[i];
  return p;
}

std::vector<std::size_t> branch_match(const EigenPairs& prev, const EigenPairs& cur) {
  const std::size_t d = prev.values.size();
  if (cur.values.size() != d || prev.vectors.rows() != d || cur.vectors.rows() != d) {
    throw ShapeError("branch_match: eigenpair dimensions differ");
  }
  if (d > kMaxMatchDim) {
    throw UnsupportedDimension("branch_match: dimension " + std::to_string(d) + " exceeds " +
                               std::to_string(kMaxMatchDim));
  }

  // fidelity[k][j] = |<prev_k|cur_j>|^2
  std::vector<std::vector<double>> fidelity(d, std::vector<double>(d));
  for (std::size_t k = 0; k < d; ++k) {
    const auto pk = prev.vectors.column(k);
    for (std::size_t j = 0; j < d; ++j) fidelity[k][j] = std::norm(inner(pk, cur.vectors.column(j)));
  }

  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = perm;
  double best_score = -1.0;
  double best_shift = 0.0;
  do {
    double score = 0.0;
    double shift = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      score += fidelity[k][perm[k]];
      shift += std::abs(prev.values[k] - cur.values[perm[k]]);
    }
    const bool better = score > best_score + kScoreTieTol;
    const bool tie_but_closer = std::abs(score - best_score) <= kScoreTieTol && shift < best_shift;
    if (better || tie_but_closer) {
      best = perm;
      best_score = score;
      best_shift = shift;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

SpectralTrajectory spectral_trajectory(const ChannelSpec& spec, const DensityOperator& rho0, const Hamiltonian& h,
                                       const TimeGrid& grid) {
  if (spec.dim() != rho0.dim() || h.dim() != rho0.dim()) {
    throw ShapeError("spectral_trajectory: channel dim " + std::to_string(spec.dim()) + ", state dim " +
                     std::to_string(rho0.dim()) + ", Hamiltonian dim " + std::to_string(h.dim()));
  }
  if (rho0.dim() > kMaxMatchDim) {
    throw UnsupportedDimension("spectral_trajectory: dimension " + std::to_string(rho0.dim()) + " exceeds " +
                               std::to_string(kMaxMatchDim));
  }

  SpectralTrajectory traj{grid, spec.rate(), {}};
  traj.snapshots.reserve(grid.size());
  std::optional<EigenPairs> prev;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tau = grid[i];
    const double t = tau / spec.rate();
    try {
      DensityOperator rho = evolve(spec, rho0, t);
      auto eig = hermitian_eigen(rho.matrix());
      EigenPairs cur{std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
      if (prev) {
        cur = permuted(cur, branch_match(*prev, cur));
        inherit_degenerate_vectors(*prev, cur);
      }
      const EnergyEigenbasis eb = energy_eigenbasis(h, t);
      auto overlap = overlap_matrix(eb.basis, cur.vectors);
      traj.snapshots.push_back(SpectralSnapshot{tau, t, std::move(rho), cur.values, cur.vectors, eb.energies,
                                                std::move(overlap)});
      prev = std::move(cur);
    } catch (const TrajectoryError&) {
      throw;
    } catch (const Error& e) {
      throw TrajectoryError("at tau=" + fmt(tau) + ": " + e.what(), tau);
    }
  }
  return traj;
}

double EnergeticsLedger::closure_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < size(); ++i) r = std::max(r, std::abs(delta_u[i] - (work[i] + heat[i] + coherence[i])));
  return r;
}

EnergeticsLedger integrate_first_law(const SpectralTrajectory& traj, const Hamiltonian& h) {
  EnergeticsLedger led;
  const auto& snaps = traj.snapshots;
  if (snaps.empty()) return led;
  const std::size_t d = snaps.front().eigenvalues.size();

  const double u0 = internal_energy(snaps.front().rho, h, snaps.front().time);
  double w = 0.0, q = 0.0, c = 0.0;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const SpectralSnapshot& s = snaps[i];
    if (i > 0) {
      const SpectralSnapshot& p = snaps[i - 1];
      for (std::size_t n = 0; n < d; ++n) {
        const double e_avg = 0.5 * (p.energies[n] + s.energies[n]);
        const double e_diff = s.energies[n] - p.energies[n];
        for (std::size_t k = 0; k < d; ++k) {
          const double r_avg = 0.5 * (p.eigenvalues[k] + s.eigenvalues[k]);
          const double r_diff = s.eigenvalues[k] - p.eigenvalues[k];
          const double o_avg = 0.5 * (p.overlap[n][k] + s.overlap[n][k]);
          const double o_diff = s.overlap[n][k] - p.overlap[n][k];
          w += r_avg * o_avg * e_diff;
          q += e_avg * o_avg * r_diff;
          c += e_avg * r_avg * o_diff;
        }
      }
    }
    led.tau.push_back(s.tau);
    led.delta_u.push_back(internal_energy(s.rho, h, s.time) - u0);
    led.work.push_back(w);
    led.heat.push_back(q);
    led.coherence.push_back(c);
  }
  return led;
}

EnergeticsLedger run_first_law(const ChannelSpec& spec, const DensityOperator& rho0, const Hamiltonian& h,
                               const TimeGrid& grid) {
  return integrate_first_law(spectral_trajectory(spec, rho0, h, grid), h);
}

}  // namespace qthermo
