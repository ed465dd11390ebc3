// Copyright 2026 The matshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "matshare/algebra.hpp"
#include "matshare/attack.hpp"
#include "matshare/dealer.hpp"
#include "matshare/protocol.hpp"

namespace {

using namespace matshare;

void BM_MatMul(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(Seed{1});
  const Matrix a = sample_matrix(dim, kDefaultEntryBound, rng);
  const Matrix b = sample_matrix(dim, kDefaultEntryBound, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul(a, b));
}
BENCHMARK(BM_MatMul)->Arg(4)->Arg(8)->Arg(20)->Arg(40);

void BM_ScaledInverse(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(Seed{2});
  const Matrix a = sample_invertible_matrix(dim, kDefaultEntryBound, rng);
  for (auto _ : state) benchmark::DoNotOptimize(scaled_inverse(a));
}
BENCHMARK(BM_ScaledInverse)->Arg(4)->Arg(8)->Arg(20);

// Products of several shadows, the size a reconstruction actually inverts.
void BM_ScaledInverseOfChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(Seed{3});
  Matrix c = sample_invertible_matrix(20, kDefaultEntryBound, rng);
  for (std::size_t i = 1; i < n; ++i) {
    c = mat_mul(sample_invertible_matrix(20, kDefaultEntryBound, rng), c);
  }
  for (auto _ : state) benchmark::DoNotOptimize(scaled_inverse(c));
}
BENCHMARK(BM_ScaledInverseOfChain)->Arg(2)->Arg(8);

void BM_FreivaldsVerify(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(Seed{4});
  const Matrix a = sample_matrix(dim, kDefaultEntryBound, rng);
  const Matrix b = sample_matrix(dim, kDefaultEntryBound, rng);
  const Matrix c = mat_mul(a, b);
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(freivalds_verify(a, b, c, 10, Seed{s++}));
}
BENCHMARK(BM_FreivaldsVerify)->Arg(8)->Arg(20)->Arg(40);

void BM_GenerateInstance(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  std::uint64_t s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        generate_instance(DealerParams{r, 32, 8, kDefaultEntryBound, Seed{s++}}));
  }
}
BENCHMARK(BM_GenerateInstance)->Arg(12)->Arg(20);

void BM_Session(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const Deal d = generate_instance(DealerParams{r, 2 * n, n, kDefaultEntryBound, Seed{5}});
  std::uint64_t s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_session(d.bulletin, d.shares, 1, std::nullopt, Seed{s++}));
  }
}
BENCHMARK(BM_Session)->Args({4, 3})->Args({12, 6})->Args({20, 8})->Unit(benchmark::kMillisecond);

void BM_ExhaustiveSearch(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Deal d = generate_instance(DealerParams{4, k, 3, kDefaultEntryBound, Seed{6}});
  const SearchProblem p{d.bulletin.matrices, 3, d.instance.secret};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_search(p, SearchMode::kOrderedDistinct));
  }
}
BENCHMARK(BM_ExhaustiveSearch)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
