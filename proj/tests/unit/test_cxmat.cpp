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
#include <random>

#include "qthermo/cxmat.hpp"
#include "../support/test_support.hpp"

using namespace qthermo;
using qthermo::testing::kPi;
using Catch::Matchers::WithinAbs;

TEST_CASE("mul", "[cxmat]") {
  const Matrix m = Matrix::from_rows({{1.0, Complex(2.0, -1.0)}, {Complex(0.0, 3.0), -4.0}});
  CHECK(mul(Matrix::identity(2), m) == m);
  CHECK(mul(pauli_x(), pauli_x()) == Matrix::identity(2));

  // K1 of the phase-damping set at gamma = 0.75: diag(1, sqrt(0.25)).
  const Matrix k1 = Matrix::diagonal({1.0, std::sqrt(1.0 - 0.75)});
  CHECK(max_abs_diff(mul(k1, adjoint(k1)), Matrix::diagonal({1.0, 0.25})) == 0.0);

  CHECK_THROWS_AS(mul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
  CHECK(mul(Matrix(2, 3), Matrix(3, 4)).cols() == 4);
}

TEST_CASE("adjoint", "[cxmat]") {
  const Matrix diag = Matrix::diagonal({1.0, std::sqrt(0.5)});
  CHECK(adjoint(diag) == diag);
  CHECK(adjoint(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})) == Matrix::from_rows({{0.0, 0.0}, {1.0, 0.0}}));

  Matrix m(2, 2);
  m(0, 1) = Complex(0.0, 1.0);
  CHECK(adjoint(m)(1, 0) == Complex(0.0, -1.0));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Matrix a = testing::random_matrix(rng, 3, 5);
    CHECK(adjoint(adjoint(a)) == a);
  }
}

TEST_CASE("trace", "[cxmat]") {
  CHECK(trace(Matrix::identity(2)) == Complex(2.0, 0.0));
  CHECK(trace(mul(Matrix::diagonal({0.75, 0.25}), Matrix::diagonal({0.0, 1.0}))) == Complex(0.25, 0.0));
  CHECK_THROWS_AS(trace(Matrix(2, 3)), ShapeError);

  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = testing::random_matrix(rng, 4, 4);
    const Matrix b = testing::random_matrix(rng, 4, 4);
    CHECK(std::abs(trace(mul(a, b)) - trace(mul(b, a))) <= 1e-12);
  }
}

TEST_CASE("matrix construction rejects non-finite entries", "[cxmat]") {
  CHECK_THROWS_AS(Matrix::from_rows({{1.0, std::nan("")}, {0.0, 1.0}}), NumericError);
  CHECK_THROWS_AS(Matrix::from_rows({{1.0}, {0.0, 1.0}}), ShapeError);
  CHECK_THROWS_AS(Matrix(0, 2), ShapeError);
}

TEST_CASE("hermitian_eigen on fixed inputs", "[cxmat][eigen]") {
  SECTION("diagonal input keeps the computational basis") {
    const auto eig = hermitian_eigen(Matrix::diagonal({0.25, 0.75}));
    CHECK(eig.eigenvalues == std::vector<double>{0.25, 0.75});
    CHECK(eig.eigenvectors == Matrix::identity(2));

    const auto swapped = hermitian_eigen(Matrix::diagonal({0.75, 0.25}));
    CHECK(swapped.eigenvalues == std::vector<double>{0.25, 0.75});
    CHECK(swapped.eigenvectors == Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  }

  SECTION("pauli x") {
    const auto eig = hermitian_eigen(pauli_x());
    CHECK_THAT(eig.eigenvalues[0], WithinAbs(-1.0, 1e-15));
    CHECK_THAT(eig.eigenvalues[1], WithinAbs(1.0, 1e-15));
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(max_abs_diff(eig.eigenvectors, Matrix::from_rows({{h, h}, {-h, h}})) <= 1e-15);
  }

  SECTION("pure state at theta = pi/6") {
    const double c = std::cos(kPi / 6), s = std::sin(kPi / 6);
    const Matrix rho = Matrix::from_rows({{c * c, c * s}, {c * s, s * s}});
    const auto [lo, hi] = testing::quadratic_eigenvalues(c * c, s * s, c * s);
    REQUIRE_THAT(lo, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(hi, WithinAbs(1.0, 1e-15));
    const auto eig = hermitian_eigen(rho);
    CHECK_THAT(eig.eigenvalues[0], WithinAbs(lo, 1e-12));
    CHECK_THAT(eig.eigenvalues[1], WithinAbs(hi, 1e-12));
  }

  SECTION("phase fix makes the largest component real and positive") {
    const Matrix y = pauli_y();
    const auto eig = hermitian_eigen(y);
    for (std::size_t j = 0; j < 2; ++j) {
      const Complex first = eig.eigenvectors(0, j);
      CHECK(first.imag() == 0.0);
      CHECK(first.real() > 0.0);
    }
  }

  SECTION("zero matrix") {
    const auto eig = hermitian_eigen(Matrix(3, 3));
    CHECK(eig.eigenvalues == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(eig.sweeps == 0);
  }
}

TEST_CASE("hermitian_eigen rejects bad input", "[cxmat][eigen]") {
  CHECK_THROWS_AS(hermitian_eigen(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), ValidationError);
  CHECK_THROWS_AS(hermitian_eigen(Matrix(2, 3)), ShapeError);
  // Within tolerance is accepted.
  CHECK_NOTHROW(hermitian_eigen(Matrix::from_rows({{0.0, 1.0}, {1.0 + 1e-13, 0.0}})));
}

TEST_CASE("hermitian_eigen properties on random matrices", "[cxmat][eigen][property]") {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> dim_dist(2, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = dim_dist(rng);
    const Matrix a = testing::random_hermitian(rng, dim);
    const auto eig = hermitian_eigen(a);
    INFO("trial " << trial << " dim " << dim);
    CHECK(testing::eigen_residual(a, eig) <= 1e-10);
    CHECK(testing::orthonormality_deviation(eig.eigenvectors) <= 1e-12);
    double sum = 0.0;
    for (double v : eig.eigenvalues) sum += v;
    CHECK(std::abs(sum - trace(a).real()) <= 1e-10);
    CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));

    Matrix lambda(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) lambda(j, j) = eig.eigenvalues[j];
    const Matrix rebuilt = mul(mul(eig.eigenvectors, lambda), adjoint(eig.eigenvectors));
    CHECK(max_abs_diff(a, rebuilt) <= 1e-10);
  }
}

TEST_CASE("hermitian_eigen matches the 2x2 quadratic formula", "[cxmat][eigen][property]") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix a = testing::random_hermitian(rng, 2);
    const auto [lo, hi] = testing::quadratic_eigenvalues(a(0, 0).real(), a(1, 1).real(), a(0, 1));
    const auto eig = hermitian_eigen(a);
    CHECK(std::abs(eig.eigenvalues[0] - lo) <= 1e-12);
    CHECK(std::abs(eig.eigenvalues[1] - hi) <= 1e-12);
  }
}
