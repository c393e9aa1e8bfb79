// Copyright 2026 The ratnear Authors
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

#include "ratnear/counting.h"
#include "ratnear/covering.h"
#include "ratnear/exponents.h"
#include "ratnear/sieve.h"

namespace ratnear {
namespace {

ParamMatrix GoldenLine() {
  return ParamMatrix(1, 1, {Scalar(0), Scalar::parse("(1+sqrt(5))/2")});
}

void BM_CountN(benchmark::State& state) {
  const ParamMatrix A = GoldenLine();
  const Scalar delta = Scalar::parse("1/100");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_N({A, state.range(0), delta, {}}).count_certain);
  }
  const double side = 2.0 * state.range(0) - 1;
  state.counters["points/s"] =
      benchmark::Counter(side * side, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_CountN)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_CountNPlane(benchmark::State& state) {
  const ParamMatrix A(2, 1, {Scalar::parse("1/3"), Scalar::parse("sqrt(2)"),
                             Scalar::parse("sqrt(3)")});
  const Scalar delta = Scalar::parse("1/50");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_N({A, state.range(0), delta, {}}).count_certain);
  }
}
BENCHMARK(BM_CountNPlane)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_CountGrid(benchmark::State& state) {
  const ParamMatrix A = GoldenLine();
  std::vector<std::int64_t> Qs;
  for (std::int64_t Q = 16; Q <= state.range(0); Q *= 2) Qs.push_back(Q);
  std::vector<Scalar> deltas;
  for (int e = 1; e <= 10; ++e) deltas.push_back(Scalar::parse("2^-" + std::to_string(e)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_N_grid(A, Qs, deltas, {}).certain.size());
  }
}
BENCHMARK(BM_CountGrid)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Records1x1(benchmark::State& state) {
  const Matrix A(1, 1, {Scalar::parse("(1+sqrt(5))/2-1")});
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_approx_records(A, state.range(0)).records.size());
  }
}
BENCHMARK(BM_Records1x1)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Records1x2(benchmark::State& state) {
  const Matrix A(1, 2, {Scalar::parse("sqrt(2)"), Scalar::parse("sqrt(3)")});
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_approx_records(A, state.range(0)).records.size());
  }
}
BENCHMARK(BM_Records1x2)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LargeSieve(benchmark::State& state) {
  std::vector<SieveInstance> insts;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) insts.push_back(random_sieve_instance(seed));
  for (auto _ : state) {
    for (const auto& inst : insts) benchmark::DoNotOptimize(large_sieve_check(inst).ratio);
  }
}
BENCHMARK(BM_LargeSieve)->Unit(benchmark::kMillisecond);

void BM_Coverage(benchmark::State& state) {
  const ParamMatrix A = GoldenLine();
  const std::int64_t Q = state.range(0);
  const Scalar delta = Scalar::parse("1/10");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ubiquity_coverage(A, Q, delta, Scalar::parse("1/100"), Ball{{0.5}, 0.5}, Sampler{})
            .fraction);
  }
}
BENCHMARK(BM_Coverage)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ratnear

BENCHMARK_MAIN();
