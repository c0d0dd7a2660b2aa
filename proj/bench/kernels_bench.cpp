// Copyright 2026 The riskknap Authors
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


// Serial reference versus OpenMP kernels on generated instances.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "riskknap/instgen.hpp"
#include "riskknap/kernels.hpp"
#include "riskknap/rng.hpp"

namespace {

using riskknap::Instance;
using riskknap::Money;
namespace kernels = riskknap::kernels;

Instance make_instance(std::size_t n_t, std::size_t n_k) {
  riskknap::gen::GenParams p;
  p.n_t = n_t;
  p.n_k = n_k;
  p.threats_per_control = n_t;
  p.seed = 42;
  return riskknap::gen::generate(p).instance;
}

std::vector<std::uint8_t> random_genes(std::size_t rows, std::size_t n_k) {
  riskknap::Rng rng(7);
  std::vector<std::uint8_t> genes(rows * n_k);
  for (auto& g : genes) g = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
  return genes;
}

void rows(benchmark::State& state, kernels::Exec exec) {
  const auto n_k = static_cast<std::size_t>(state.range(0));
  const std::size_t count = 1000;
  const Instance inst = make_instance(20, n_k);
  const auto genes = random_genes(count, n_k);
  std::vector<Money> cost(count);
  std::vector<double> exp(count);
  for (auto _ : state) {
    kernels::evaluate_rows(exec, inst, genes, cost, exp);
    benchmark::DoNotOptimize(exp.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(count));
}

void enumerate(benchmark::State& state, kernels::Exec exec) {
  const Instance inst =
      make_instance(10, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::enumerate(exec, inst));
  }
}

void BM_RowsSerial(benchmark::State& s) { rows(s, kernels::Exec::kSerial); }
void BM_RowsParallel(benchmark::State& s) { rows(s, kernels::Exec::kParallel); }
void BM_EnumSerial(benchmark::State& s) {
  enumerate(s, kernels::Exec::kSerial);
}
void BM_EnumParallel(benchmark::State& s) {
  enumerate(s, kernels::Exec::kParallel);
}

BENCHMARK(BM_RowsSerial)->Arg(20)->Arg(100);
BENCHMARK(BM_RowsParallel)->Arg(20)->Arg(100);
BENCHMARK(BM_EnumSerial)->Arg(12)->Arg(18);
BENCHMARK(BM_EnumParallel)->Arg(12)->Arg(18);

}  // namespace

BENCHMARK_MAIN();
