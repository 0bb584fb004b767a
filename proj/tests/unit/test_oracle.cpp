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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qthermo/oracle.hpp"
#include "../support/test_support.hpp"

using namespace qthermo;
using namespace qthermo::oracle;
using qthermo::testing::kPi;

namespace {

DensityOperator preset_state() { return prepare_pure_state({kPi / 6, 0.0}); }

double residual(const Matrix& rho, const TwoLevelEigensystem& es) {
  double worst = 0.0;
  const Matrix rv = mul(rho, es.vectors);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t r = 0; r < 2; ++r) worst = std::max(worst, std::abs(rv(r, j) - es.values[j] * es.vectors(r, j)));
  }
  return worst;
}

// Same eigenvector up to a global phase: |<u|v>| = 1.
double phase_distance(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  return std::abs(1.0 - std::abs(inner(u, v)));
}

}  // namespace

TEST_CASE("pd_eigensystem", "[oracle]") {
  const auto rho0 = preset_state();

  const auto start = pd_eigensystem(0.0, rho0);
  CHECK(std::abs(start.intermediates.m - 1.0) <= 1e-15);
  CHECK(std::abs(start.values[0] - 1.0) <= 1e-15);
  CHECK(std::abs(start.values[1]) <= 1e-15);

  const auto late = pd_eigensystem(40.0, rho0);
  CHECK(std::abs(late.values[0] - 0.75) <= 1e-12);
  CHECK(std::abs(late.values[1] - 0.25) <= 1e-12);
  CHECK(std::abs(std::abs(late.vectors(0, 0)) - 1.0) <= 1e-8);
  CHECK(std::abs(std::abs(late.vectors(1, 1)) - 1.0) <= 1e-8);

  for (int i = 0; i <= 100; ++i) {
    const double tau = 0.1 * i;
    const auto es = pd_eigensystem(tau, rho0);
    CHECK(std::abs(es.values[0] + es.values[1] - 1.0) <= 1e-15);
    CHECK(residual(pd_state(tau, rho0), es) <= 1e-12);
    CHECK(std::abs(es.intermediates.channel_factor - std::exp(-tau)) <= 1e-15);
  }

  SECTION("diagonal input falls back to the computational basis") {
    const auto diag = DensityOperator::from_matrix(Matrix::diagonal({0.3, 0.7}));
    const auto es = pd_eigensystem(1.0, diag);
    CHECK(es.values[0] == 0.7);
    CHECK(es.vectors == Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  }
}

TEST_CASE("pd_eigensystem agrees with the Jacobi solver", "[oracle][property]") {
  for (double theta : {kPi / 6, kPi / 5, 0.4}) {
    for (double phi : {0.0, 1.3}) {
      const auto rho0 = prepare_pure_state({theta, phi});
      for (int i = 0; i < 100; ++i) {
        const double tau = 10.0 * i / 99.0;
        const auto es = pd_eigensystem(tau, rho0);
        const auto num = hermitian_eigen(pd_state(tau, rho0));
        // Ascending vs descending order.
        CHECK(std::abs(es.values[0] - num.eigenvalues[1]) <= 1e-12);
        CHECK(std::abs(es.values[1] - num.eigenvalues[0]) <= 1e-12);
        CHECK(phase_distance(es.vectors.column(0), num.eigenvectors.column(1)) <= 1e-12);
        CHECK(phase_distance(es.vectors.column(1), num.eigenvectors.column(0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("pf_eigensystem solves the phase-flipped state", "[oracle]") {
  const auto rho0 = preset_state();
  for (int i = 0; i <= 100; ++i) {
    const double tau = 0.08 * i;
    const auto es = pf_eigensystem(tau, rho0);
    const double f = 2.0 * std::exp(-tau) - 1.0;
    CHECK(std::abs(es.intermediates.m - (0.25 + 0.75 * f * f)) <= 1e-15);
    CHECK(residual(pf_state(tau, rho0), es) <= 1e-12);
  }
}

TEST_CASE("pd heat and coherence", "[oracle]") {
  const auto cfg = default_config();
  CHECK(pd_heat(0.0, cfg) == 0.0);
  CHECK(std::abs(pd_heat(1.0, cfg) - 0.08032824756140147) <= 1e-15);
  CHECK(std::abs(pd_coherence(1.0, cfg) + 0.08032824756140147) <= 1e-15);
  CHECK(std::abs(pd_heat(40.0, cfg) - std::log(4.0) / 8.0) <= 1e-15);
  CHECK(std::abs(pd_heat(8.0, cfg) - 0.17316105991312036) <= 1e-15);
  CHECK(pd_coherence(0.0, cfg) == 0.0);

  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double tau = 0.01 * i;
    CHECK(pd_heat(tau, cfg) + pd_coherence(tau, cfg) == 0.0);
    CHECK(pd_heat(tau, cfg) >= prev);
    prev = pd_heat(tau, cfg);
  }
}

TEST_CASE("pf heat and coherence", "[oracle]") {
  const auto cfg = default_config();
  CHECK(pf_heat(0.0, cfg) == 0.0);
  CHECK(std::abs(pf_heat(std::log(2.0), cfg) - std::log(4.0) / 8.0) <= 1e-15);
  CHECK(std::abs(pf_coherence(std::log(2.0), cfg) + std::log(4.0) / 8.0) <= 1e-14);
  CHECK(std::abs(pf_heat(8.0, cfg) - 1.2581958580513313e-4) <= 1e-15);
  CHECK(std::abs(pf_coherence(0.0, cfg)) <= 1e-16);
  CHECK(pf_heat(40.0, cfg) <= 1e-16);

  std::size_t argmax = 0;
  double best = -1.0;
  const double step = 8.0 / 4000;
  for (int i = 0; i <= 4000; ++i) {
    const double tau = step * i;
    const double q = pf_heat(tau, cfg);
    CHECK(q >= 0.0);
    CHECK(std::abs(q + pf_coherence(tau, cfg)) <= 1e-14);
    CHECK(std::abs(q - pf_heat_reduced(tau, cfg)) <= 1e-14);
    if (q > best) {
      best = q;
      argmax = static_cast<std::size_t>(i);
    }
  }
  CHECK(argmax == static_cast<std::size_t>(std::lround(std::log(2.0) / step)));
}

TEST_CASE("general-energy forms scale with the level gap", "[oracle]") {
  const OracleConfig unit(0.0, 1.0, kPi / 6);
  const OracleConfig shifted(0.3, 1.7, kPi / 6);
  for (int i = 0; i <= 400; ++i) {
    const double tau = 0.02 * i;
    CHECK(std::abs(pf_heat(tau, shifted) - 1.4 * pf_heat(tau, unit)) <= 1e-12);
    CHECK(std::abs(pf_coherence(tau, shifted) - 1.4 * pf_coherence(tau, unit)) <= 1e-12);
    CHECK(std::abs(pd_heat(tau, shifted) - 1.4 * pd_heat(tau, unit)) <= 1e-12);
  }
}

TEST_CASE("oracle config gating", "[oracle]") {
  CHECK_THROWS_AS(OracleConfig(0.0, 1.0, kPi / 4), ValidationError);
  CHECK_THROWS_AS(OracleConfig(1.0, 0.0, kPi / 6), ValidationError);
  CHECK_NOTHROW(OracleConfig(-2.0, -1.0, kPi / 6));
  const auto three = DensityOperator::from_matrix(Matrix::diagonal({0.2, 0.3, 0.5}));
  CHECK_THROWS_AS(pd_eigensystem(0.0, three), ShapeError);
}
