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

#include <algorithm>
#include <vector>

#include "riskknap/kernels.hpp"

namespace riskknap::kernels {

void evaluate_rows_parallel(const Instance& instance,
                            std::span<const std::uint8_t> genes,
                            std::span<Money> cost,
                            std::span<double> expenditure) {
  const std::size_t n_k = instance.num_controls();
  const std::size_t n_t = instance.num_threats();
  const auto rows = static_cast<std::ptrdiff_t>(cost.size());
#pragma omp parallel
  {
    std::vector<double> p(n_t);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      const std::uint8_t* g = genes.data() + r * n_k;
      p.assign(instance.p_init.begin(), instance.p_init.end());
      Money c = 0;
      for (std::size_t k = 0; k < n_k; ++k) {
        if (!g[k]) continue;
        c += instance.controls[k].cost;
        const auto& pi = instance.controls[k].survival;
        for (std::size_t i = 0; i < n_t; ++i) p[i] *= pi[i];
      }
      cost[r] = c;
      expenditure[r] = risk_of(instance, p) + static_cast<double>(c) +
                       static_cast<double>(instance.x_init);
    }
  }
}

EnumBest enumerate_parallel(const Instance& instance) {
  const std::size_t n_k = instance.num_controls();
  const unsigned prefix_bits =
      static_cast<unsigned>(std::min<std::size_t>(6, n_k));
  const auto shards = static_cast<std::ptrdiff_t>(std::uint64_t{1}
                                                  << prefix_bits);
  std::vector<EnumBest> partial(static_cast<std::size_t>(shards));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < shards; ++s) {
    partial[s] = enumerate_shard(instance, prefix_bits,
                                 static_cast<std::uint64_t>(s));
  }
  // Fixed reduction order keeps the tie-break deterministic.
  EnumBest best = partial[0];
  for (std::size_t s = 1; s < partial.size(); ++s) {
    if (partial[s].found && (!best.found || better(partial[s], best))) {
      best = partial[s];
    }
  }
  return best;
}

}  // namespace riskknap::kernels
