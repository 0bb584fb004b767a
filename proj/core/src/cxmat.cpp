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

#include "qthermo/cxmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qthermo {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
  }
}

void require_finite(const Matrix& m, const char* op) {
  if (!m.all_finite()) throw NumericError(std::string(op) + ": non-finite entry in result");
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Complex>& diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m, "diagonal");
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  std::vector<std::vector<Complex>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ShapeError("from_rows: empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ShapeError("from_rows: ragged rows");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!finite(rows[r][c])) throw NumericError("from_rows: non-finite entry");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

std::vector<Complex> Matrix::column(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), finite);
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mul: inner dimensions differ (" + shape_str(a) + " * " + shape_str(b) + ")");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  require_finite(out, "mul");
  return out;
}

Matrix adjoint(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  }
  require_finite(out, "add");
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  }
  require_finite(out, "subtract");
  return out;
}

Matrix scale(const Matrix& a, Complex factor) {
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= factor;
  }
  require_finite(out, "scale");
  return out;
}

Complex trace(const Matrix& a) {
  if (!a.is_square()) throw ShapeError("trace: matrix is " + shape_str(a));
  Complex sum{};
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double hermiticity_deviation(const Matrix& a) {
  if (!a.is_square()) throw ShapeError("hermiticity_deviation: matrix is " + shape_str(a));
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
  }
  return m;
}

Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  if (u.size() != v.size()) throw ShapeError("inner: vector lengths differ");
  Complex s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

Matrix pauli_x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
Matrix pauli_y() { return Matrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}); }
Matrix pauli_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

HermitianEigenDecomposition hermitian_eigen(const Matrix& input, double tol) {
  if (!input.is_square()) throw ShapeError("hermitian_eigen: matrix is " + shape_str(input));
  if (!input.all_finite()) throw ValidationError("hermitian_eigen: non-finite entry");
  const double herm_dev = hermiticity_deviation(input);
  if (herm_dev > tol) {
    throw ValidationError("hermitian_eigen: matrix is not Hermitian (deviation " +
                          std::to_string(herm_dev) + ")");
  }

  const std::size_t n = input.rows();
  // Work on the exactly Hermitian part.
  Matrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = input(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v = 0.5 * (input(r, c) + std::conj(input(c, r)));
      a(r, c) = v;
      a(c, r) = std::conj(v);
    }
  }
  Matrix v = Matrix::identity(n);

  const double threshold = 1e-14 * a.max_abs();
  auto off_diagonal_converged = [&] {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) {
        if (std::abs(a(r, c)) > threshold) return false;
      }
    }
    return true;
  };

  int sweeps = 0;
  while (!off_diagonal_converged()) {
    if (sweeps == kMaxJacobiSweeps) {
      throw ConvergenceError("hermitian_eigen: no convergence after " +
                             std::to_string(kMaxJacobiSweeps) + " sweeps");
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= threshold) continue;

        // G = diag(1, e^{-i phi}) * R, where R is the real rotation that
        // annihilates the (now real) off-diagonal entry |a_pq|.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        // A <- A G
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        // A <- G^dagger A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // V <- V G
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigenDecomposition out;
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a(src, src).real();

    double largest = 0.0;
    for (std::size_t k = 0; k < n; ++k) largest = std::max(largest, std::abs(v(k, src)));
    std::size_t pivot = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(v(k, src)) >= largest * (1.0 - 1e-12)) {
        pivot = k;
        break;
      }
    }
    const Complex fix = std::conj(v(pivot, src)) / std::abs(v(pivot, src));
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = v(k, src) * fix;
    out.eigenvectors(pivot, j) = std::abs(out.eigenvectors(pivot, j));
  }
  return out;
}

}  // namespace qthermo
