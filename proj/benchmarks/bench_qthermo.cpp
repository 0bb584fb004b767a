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

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qthermo/firstlaw.hpp"

namespace {

using namespace qthermo;

Matrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = u(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex v(u(rng), u(rng));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

void BM_HermitianEigen(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Matrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(a));
}
BENCHMARK(BM_HermitianEigen)->Arg(2)->Arg(4)->Arg(8);

void BM_FirstLaw(benchmark::State& state) {
  const auto kind = static_cast<ChannelKind>(state.range(0));
  const auto spec = ChannelSpec::builtin(kind);
  const auto rho0 = prepare_pure_state(InitialStatePrep(std::numbers::pi / 6));
  const auto h = Hamiltonian::diagonal({0.0, 1.0});
  const TimeGrid grid(kDefaultTauMax, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_first_law(spec, rho0, h, grid));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_FirstLaw)
    ->Args({static_cast<int>(ChannelKind::PhaseDamping), 4000})
    ->Args({static_cast<int>(ChannelKind::BitPhaseFlip), 4000})
    ->Unit(benchmark::kMillisecond);

void BM_CustomChannelFirstLaw(benchmark::State& state) {
  const auto spec = ChannelSpec::custom(
      {ExprMatrix::parse({{{"1", "0"}, {"0", "0"}}, {{"0", "0"}, {"exp(-t/2)", "0"}}}),
       ExprMatrix::parse({{{"0", "0"}, {"0", "0"}}, {{"0", "0"}, {"sqrt(1-exp(-t))", "0"}}})});
  const auto rho0 = prepare_pure_state(InitialStatePrep(std::numbers::pi / 6));
  const auto h = Hamiltonian::diagonal({0.0, 1.0});
  const TimeGrid grid(kDefaultTauMax, kDefaultSteps);
  for (auto _ : state) benchmark::DoNotOptimize(run_first_law(spec, rho0, h, grid));
}
BENCHMARK(BM_CustomChannelFirstLaw)->Unit(benchmark::kMillisecond);

void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(expr::parse("sqrt(1-exp(-2*t))*cos(0.5*t)^2"));
}
BENCHMARK(BM_ParseExpression);

void BM_EvalExpression(benchmark::State& state) {
  const auto e = expr::parse("sqrt(1-exp(-2*t))*cos(0.5*t)^2");
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expr::eval(e, t));
    t += 1e-6;
  }
}
BENCHMARK(BM_EvalExpression);

}  // namespace

BENCHMARK_MAIN();
