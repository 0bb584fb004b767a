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
#include <vector>

#include "qthermo/cxmat.hpp"
#include "qthermo/exprparse.hpp"

namespace qthermo {

/// Bloch-sphere angles for cos(theta)|g> + e^{i phi} sin(theta)|e>.
class InitialStatePrep {
 public:
  /// Requires theta in [0, pi/2] and phi in [0, 2 pi); throws ValidationError otherwise.
  InitialStatePrep(double theta, double phi = 0.0);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

 private:
  double theta_;
  double phi_;
};

struct ValidationCheck {
  std::string name;
  double deviation = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  /// One "name: pass|FAIL (deviation ...)" line per check.
  std::string summary() const;
};

inline constexpr double kDensityTol = 1e-12;
inline constexpr double kPsdFloor = 1e-10;

/// Checks squareness, Hermiticity, unit trace and positive semidefiniteness.
/// The PSD check accepts eigenvalues down to -max(tol, kPsdFloor).
ValidationReport validate_density(const Matrix& rho, double tol = kDensityTol);

/// A validated density matrix. Instances always satisfy validate_density.
class DensityOperator {
 public:
  /// Throws ValidationError with the report summary if `m` is not a state.
  static DensityOperator from_matrix(Matrix m, double tol = kDensityTol);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }

 private:
  explicit DensityOperator(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

DensityOperator prepare_pure_state(const InitialStatePrep& prep);

/// Projector |psi><psi| onto a normalized copy of `amplitudes`.
DensityOperator pure_state(const std::vector<Complex>& amplitudes);

/// Hamiltonian with expression-valued entries.
///
/// Only the upper triangle is stored: real expressions on the diagonal and
/// (re, im) expression pairs above it. The lower triangle is the conjugate,
/// so every evaluation is exactly Hermitian.
class Hamiltonian {
 public:
  struct OffDiagonal {
    expr::Expression re;
    expr::Expression im;
  };

  /// `upper` holds dim*(dim-1)/2 entries in row-major order: (0,1), (0,2), ..., (1,2), ...
  Hamiltonian(std::vector<expr::Expression> diagonal, std::vector<OffDiagonal> upper);

  static Hamiltonian diagonal(const std::vector<double>& energies);
  /// Constant Hamiltonian from a Hermitian matrix (ValidationError otherwise).
  static Hamiltonian constant(const Matrix& h);

  std::size_t dim() const noexcept { return diagonal_.size(); }
  /// No entry depends on t.
  bool is_static() const;
  /// Every off-diagonal entry is the literal 0.
  bool is_diagonal() const;

  Matrix at(double t) const;
  /// Diagonal entries only, evaluated at t.
  std::vector<double> diagonal_at(double t) const;

 private:
  std::vector<expr::Expression> diagonal_;
  std::vector<OffDiagonal> upper_;
};

struct EnergyEigenbasis {
  std::vector<double> energies;
  Matrix basis;  // column n is |n>
};

/// Tr(rho H(t)). Throws ShapeError on dimension mismatch and NumericError when
/// the imaginary part of the trace exceeds 1e-12.
double internal_energy(const DensityOperator& rho, const Hamiltonian& h, double t);

/// Energy levels and eigenvectors of H(t).
///
/// A structurally diagonal H keeps the computational order of its levels and
/// returns the identity basis exactly, so level n of a driven diagonal H stays
/// level n at every t. Otherwise the Jacobi solver is used (ascending order).
EnergyEigenbasis energy_eigenbasis(const Hamiltonian& h, double t);

}  // namespace qthermo
