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

#include "qthermo/channel.hpp"

#include <cmath>
#include <cstdio>

namespace qthermo {

namespace {

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

}  // namespace

std::string_view channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::PhaseDamping: return "phase-damping";
    case ChannelKind::PhaseFlip: return "phase-flip";
    case ChannelKind::BitFlip: return "bit-flip";
    case ChannelKind::BitPhaseFlip: return "bit-phase-flip";
    case ChannelKind::Custom: return "custom";
  }
  return "?";
}

Matrix ExprMatrix::eval(double t) const {
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& e = entries[r * dim + c];
      m(r, c) = Complex(expr::eval(e.re, t), expr::eval(e.im, t));
    }
  }
  return m;
}

ExprMatrix ExprMatrix::parse(const std::vector<std::vector<std::pair<std::string, std::string>>>& rows) {
  ExprMatrix out;
  out.dim = rows.size();
  if (out.dim == 0) throw ShapeError("Kraus matrix is empty");
  for (const auto& row : rows) {
    if (row.size() != out.dim) throw ShapeError("Kraus matrix must be square");
    for (const auto& [re, im] : row) out.entries.push_back({expr::parse(re), expr::parse(im)});
  }
  return out;
}

ExprMatrix ExprMatrix::constant(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("Kraus matrix must be square");
  ExprMatrix out;
  out.dim = m.rows();
  for (const auto& z : m.data()) {
    out.entries.push_back({expr::Expression::constant(z.real()), expr::Expression::constant(z.imag())});
  }
  return out;
}

ChannelSpec::ChannelSpec(ChannelKind kind, double rate, std::size_t dim, std::vector<ExprMatrix> custom)
    : kind_(kind), rate_(rate), dim_(dim), custom_(std::move(custom)) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ValidationError("channel rate must be positive and finite");
  }
}

ChannelSpec ChannelSpec::builtin(ChannelKind kind, double rate) {
  if (kind == ChannelKind::Custom) throw ValidationError("builtin: custom is not a builtin channel");
  return ChannelSpec(kind, rate, 2, {});
}

ChannelSpec ChannelSpec::custom(std::vector<ExprMatrix> kraus, double rate) {
  if (kraus.empty()) throw ValidationError("custom channel needs at least one Kraus operator");
  const std::size_t d = kraus.front().dim;
  if (d == 0) throw ShapeError("custom channel: dimension must be positive");
  for (const auto& k : kraus) {
    if (k.dim != d || k.entries.size() != d * d) throw ShapeError("custom channel: Kraus operators differ in shape");
  }
  return ChannelSpec(ChannelKind::Custom, rate, d, std::move(kraus));
}

KrausSet kraus_at(const ChannelSpec& spec, double t) {
  if (!(t >= 0.0)) throw ValidationError("kraus_at: time must be non-negative");
  KrausSet set;
  set.time_label = t;

  if (spec.kind() == ChannelKind::Custom) {
    const auto& ops = spec.custom_kraus();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      try {
        set.operators.push_back(ops[i].eval(t));
      } catch (const expr::DomainError& e) {
        throw NumericError("custom channel, Kraus operator " + std::to_string(i) + ", t=" + fmt_time(t) + ": " +
                           e.what());
      }
    }
    return set;
  }

  // gamma for phase damping, p for the Pauli channels; same parameterization.
  // keep = sqrt(1 - gamma) = exp(-rate t / 2), flip = sqrt(gamma).
  const double keep = std::exp(-0.5 * spec.rate() * t);
  const double flip = std::sqrt(-std::expm1(-spec.rate() * t));
  const Matrix id = Matrix::identity(2);
  switch (spec.kind()) {
    case ChannelKind::PhaseDamping:
      set.operators = {Matrix::diagonal({1.0, keep}), Matrix::diagonal({0.0, flip})};
      break;
    case ChannelKind::PhaseFlip:
      set.operators = {scale(id, keep), scale(pauli_z(), flip)};
      break;
    case ChannelKind::BitFlip:
      set.operators = {scale(id, keep), scale(pauli_x(), flip)};
      break;
    case ChannelKind::BitPhaseFlip:
      set.operators = {scale(id, keep), scale(pauli_y(), flip)};
      break;
    case ChannelKind::Custom:
      break;
  }
  return set;
}

CptpReport validate_cptp(const KrausSet& set, double tol) {
  if (set.operators.empty()) throw ShapeError("validate_cptp: empty Kraus set");
  const std::size_t d = set.operators.front().rows();
  Matrix sum(d, d);
  for (const auto& k : set.operators) {
    if (!k.is_square() || k.rows() != d) throw ShapeError("validate_cptp: Kraus operators differ in shape");
    sum = add(sum, mul(adjoint(k), k));
  }
  CptpReport r;
  r.deviation = max_abs_diff(sum, Matrix::identity(d));
  r.pass = r.deviation <= tol;
  return r;
}

DensityOperator apply(const KrausSet& set, const DensityOperator& rho) {
  const CptpReport report = validate_cptp(set, kCptpApplyTol);
  if (!report.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", report.deviation);
    throw CptpError("Kraus set at t=" + fmt_time(set.time_label) + " is not trace preserving (deviation " + buf + ")",
                    report, set.time_label);
  }
  const std::size_t d = rho.dim();
  if (set.operators.front().rows() != d) {
    throw ShapeError("apply: Kraus dim " + std::to_string(set.operators.front().rows()) + " vs state dim " +
                     std::to_string(d));
  }
  Matrix out(d, d);
  for (const auto& k : set.operators) out = add(out, mul(mul(k, rho.matrix()), adjoint(k)));
  // Symmetrize away round-off so the result is exactly Hermitian.
  for (std::size_t r = 0; r < d; ++r) {
    out(r, r) = out(r, r).real();
    for (std::size_t c = r + 1; c < d; ++c) {
      const Complex v = 0.5 * (out(r, c) + std::conj(out(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
  }
  return DensityOperator::from_matrix(std::move(out), kCptpApplyTol);
}

DensityOperator evolve(const ChannelSpec& spec, const DensityOperator& rho0, double t) {
  return apply(kraus_at(spec, t), rho0);
}

}  // namespace qthermo
