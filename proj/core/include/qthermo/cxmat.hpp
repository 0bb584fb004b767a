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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qthermo/error.hpp"

namespace qthermo {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
///
/// Entries are finite by construction: the checked factories reject NaN and
/// Inf, and every arithmetic helper in this header re-checks its result.
/// The mutable element accessor is unchecked; callers that write through it
/// are expected to produce finite values.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix of the given shape. Both dimensions must be positive.
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(const std::vector<Complex>& diag);
  /// Builds a matrix from nested rows; all rows must have equal length.
  static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static Matrix from_rows(const std::vector<std::vector<Complex>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  const std::vector<Complex>& data() const noexcept { return data_; }

  /// Column `c` as a vector.
  std::vector<Complex> column(std::size_t c) const;

  bool all_finite() const noexcept;

  /// Largest entry magnitude; 0 for the zero matrix.
  double max_abs() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix mul(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, Complex factor);
Complex trace(const Matrix& a);

/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max_ij |a_ij - conj(a_ji)|.
double hermiticity_deviation(const Matrix& a);

/// <u|v> with the conjugate on the left argument.
Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v);

/// Pauli matrices.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

struct HermitianEigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column j pairs with eigenvalues[j]
  int sweeps = 0;
};

inline constexpr double kDefaultHermitianTol = 1e-12;
inline constexpr int kMaxJacobiSweeps = 100;

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps until every off-diagonal magnitude is at most 1e-14 * max|a_ij|.
/// Eigenvalues come back ascending. Each eigenvector is rotated by a global
/// phase so that its largest-magnitude component (first one on ties) is real
/// and positive, which makes the output deterministic.
///
/// Throws ValidationError when max|a - a^dagger| exceeds `tol`, ShapeError
/// for non-square input, and ConvergenceError after kMaxJacobiSweeps sweeps.
HermitianEigenDecomposition hermitian_eigen(const Matrix& a, double tol = kDefaultHermitianTol);

}  // namespace qthermo
