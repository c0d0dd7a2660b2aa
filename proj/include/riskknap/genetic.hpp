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

#ifndef RISKKNAP_GENETIC_HPP_
#define RISKKNAP_GENETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "riskknap/deadline.hpp"
#include "riskknap/model.hpp"
#include "riskknap/rng.hpp"

namespace riskknap::ga {

// Defaults are the "high" settings used for the accuracy experiments.
struct GaSettings {
  std::size_t population_size = 1000;
  std::size_t limit = 1000;
  int two_point_pct = 80;
  int elitism_pct = 15;
  std::size_t mutation_bits = 1;
  int mix_good_good = 50;
  int mix_good_bad = 45;
  int mix_bad_bad = 5;
  // Share of the sorted population counted as "good" for mate pairing.
  int good_fraction_pct = 50;
  std::uint64_t seed = 1;
  // Evaluate each generation with the OpenMP kernel.
  bool parallel_eval = false;
};

std::vector<Violation> validate(const GaSettings& settings);

// Gene k set = control k installed. expenditure/cost are cached and must be
// refreshed with evaluate() after any gene change.
struct Chromosome {
  std::vector<std::uint8_t> genes;
  Money cost = 0;
  double expenditure = 0.0;

  Selection selection() const;
};

using Population = std::vector<Chromosome>;

void evaluate(const Instance& instance, Chromosome& ch);
void evaluate(const Instance& instance, Population& population,
              bool parallel);
// Stable ascending sort by expenditure.
void sort_population(Population& population);

// Swaps genes [l, r] (inclusive) between the pair.
void swap_range(Chromosome& a, Chromosome& b, std::size_t l, std::size_t r);
// Swaps the first n_k / 2 genes.
void swap_first_half(Chromosome& a, Chromosome& b);
// Two-point with probability two_point_pct, otherwise first-half swap.
// Offspring are returned unevaluated.
std::pair<Chromosome, Chromosome> merge(const Chromosome& a,
                                        const Chromosome& b,
                                        const GaSettings& settings, Rng& rng);

Population init_population(const Instance& instance,
                           const GaSettings& settings, Rng& rng);
Population crossover_generation(const Population& population,
                                const Instance& instance,
                                const GaSettings& settings, Rng& rng);
Population mutate_generation(const Population& population,
                             const Instance& instance,
                             const GaSettings& settings, Rng& rng);

struct GaTrace {
  // Incumbent expenditure after each generation (index 0 = initial).
  std::vector<double> best_per_generation;
};

Solution solve(const Instance& instance, const GaSettings& settings,
               GaTrace* trace = nullptr, const Deadline& deadline = {});

}  // namespace riskknap::ga

#endif  // RISKKNAP_GENETIC_HPP_
