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

#include "qthermo/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qthermo {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

InitialStatePrep::InitialStatePrep(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    throw ValidationError("theta must lie in [0, pi/2], got " + std::to_string(theta));
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw ValidationError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
  }
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.name + ": " + (c.pass ? "pass" : "FAIL") + " (deviation " + fmt(c.deviation) + ")\n";
  }
  return out;
}

ValidationReport validate_density(const Matrix& rho, double tol) {
  ValidationReport report;
  if (rho.empty() || !rho.is_square()) {
    report.checks.push_back({"square", 1.0, false});
    return report;
  }
  if (!rho.all_finite()) {
    report.checks.push_back({"finite", 1.0, false});
    return report;
  }
  const double herm = hermiticity_deviation(rho);
  report.checks.push_back({"hermitian", herm, herm <= tol});

  const double trace_dev = std::abs(trace(rho) - Complex(1.0, 0.0));
  report.checks.push_back({"trace", trace_dev, trace_dev <= tol});

  // Eigenvalues of the Hermitian part; meaningful even when the check above fails.
  Matrix sym = scale(add(rho, adjoint(rho)), 0.5);
  const auto eig = hermitian_eigen(sym, 1.0);
  const double negativity = std::max(0.0, -eig.eigenvalues.front());
  report.checks.push_back({"positive_semidefinite", negativity, negativity <= std::max(tol, kPsdFloor)});
  return report;
}

DensityOperator DensityOperator::from_matrix(Matrix m, double tol) {
  const ValidationReport report = validate_density(m, tol);
  if (!report.ok()) throw ValidationError("invalid density operator:\n" + report.summary());
  return DensityOperator(std::move(m));
}

DensityOperator pure_state(const std::vector<Complex>& amplitudes) {
  if (amplitudes.empty()) throw ShapeError("pure_state: empty amplitude vector");
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw ValidationError("pure_state: zero or non-finite norm");
  const double inv = 1.0 / std::sqrt(norm2);
  const std::size_t d = amplitudes.size();
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]) * inv * inv;
  }
  return DensityOperator::from_matrix(std::move(m));
}

DensityOperator prepare_pure_state(const InitialStatePrep& prep) {
  const double c = std::cos(prep.theta());
  const double s = std::sin(prep.theta());
  const Complex phase = std::polar(1.0, prep.phi());
  // Rank one by construction; built entry-wise to keep the diagonal exactly real.
  Matrix m(2, 2);
  m(0, 0) = c * c;
  m(0, 1) = c * s * std::conj(phase);
  m(1, 0) = c * s * phase;
  m(1, 1) = s * s;
  return DensityOperator::from_matrix(std::move(m));
}

Hamiltonian::Hamiltonian(std::vector<expr::Expression> diagonal, std::vector<OffDiagonal> upper)
    : diagonal_(std::move(diagonal)), upper_(std::move(upper)) {
  const std::size_t d = diagonal_.size();
  if (d == 0) throw ShapeError("Hamiltonian: empty diagonal");
  if (upper_.size() != d * (d - 1) / 2) {
    throw ShapeError("Hamiltonian: expected " + std::to_string(d * (d - 1) / 2) + " off-diagonal entries");
  }
}

Hamiltonian Hamiltonian::diagonal(const std::vector<double>& energies) {
  std::vector<expr::Expression> diag;
  for (double e : energies) diag.push_back(expr::Expression::constant(e));
  const std::size_t d = energies.size();
  std::vector<OffDiagonal> upper(d * (d - 1) / 2,
                                 OffDiagonal{expr::Expression::constant(0.0), expr::Expression::constant(0.0)});
  return Hamiltonian(std::move(diag), std::move(upper));
}

Hamiltonian Hamiltonian::constant(const Matrix& h) {
  if (!h.is_square()) throw ShapeError("Hamiltonian::constant: matrix is not square");
  if (hermiticity_deviation(h) > kDefaultHermitianTol) {
    throw ValidationError("Hamiltonian::constant: matrix is not Hermitian");
  }
  std::vector<expr::Expression> diag;
  std::vector<OffDiagonal> upper;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    diag.push_back(expr::Expression::constant(h(r, r).real()));
    for (std::size_t c = r + 1; c < h.cols(); ++c) {
      upper.push_back({expr::Expression::constant(h(r, c).real()), expr::Expression::constant(h(r, c).imag())});
    }
  }
  return Hamiltonian(std::move(diag), std::move(upper));
}

bool Hamiltonian::is_static() const {
  return std::all_of(diagonal_.begin(), diagonal_.end(), [](const auto& e) { return e.is_constant(); }) &&
         std::all_of(upper_.begin(), upper_.end(),
                     [](const auto& o) { return o.re.is_constant() && o.im.is_constant(); });
}

bool Hamiltonian::is_diagonal() const {
  return std::all_of(upper_.begin(), upper_.end(),
                     [](const auto& o) { return o.re.is_literal(0.0) && o.im.is_literal(0.0); });
}

Matrix Hamiltonian::at(double t) const {
  const std::size_t d = dim();
  Matrix m(d, d);
  std::size_t k = 0;
  for (std::size_t r = 0; r < d; ++r) {
    m(r, r) = expr::eval(diagonal_[r], t);
    for (std::size_t c = r + 1; c < d; ++c, ++k) {
      const Complex v(expr::eval(upper_[k].re, t), expr::eval(upper_[k].im, t));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

std::vector<double> Hamiltonian::diagonal_at(double t) const {
  std::vector<double> out;
  out.reserve(diagonal_.size());
  for (const auto& e : diagonal_) out.push_back(expr::eval(e, t));
  return out;
}

double internal_energy(const DensityOperator& rho, const Hamiltonian& h, double t) {
  if (rho.dim() != h.dim()) {
    throw ShapeError("internal_energy: state dim " + std::to_string(rho.dim()) + " vs Hamiltonian dim " +
                     std::to_string(h.dim()));
  }
  const Complex u = trace(mul(rho.matrix(), h.at(t)));
  if (std::abs(u.imag()) > 1e-12) {
    throw NumericError("internal_energy: imaginary residue " + fmt(u.imag()));
  }
  return u.real();
}

EnergyEigenbasis energy_eigenbasis(const Hamiltonian& h, double t) {
  if (h.is_diagonal()) return {h.diagonal_at(t), Matrix::identity(h.dim())};
  auto eig = hermitian_eigen(h.at(t));
  return {std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
}

}  // namespace qthermo
