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

#include "riskknap/genetic.hpp"

#include <algorithm>
#include <string>

#include "riskknap/kernels.hpp"

namespace riskknap::ga {

namespace {

constexpr int kResampleAttempts = 100;

bool within_cap(const Instance& instance, const Chromosome& ch) {
  return !instance.budget_cap || ch.cost <= *instance.budget_cap;
}

Money gene_cost(const Instance& instance, const std::vector<std::uint8_t>& genes) {
  Money c = 0;
  for (std::size_t k = 0; k < genes.size(); ++k) {
    if (genes[k]) c += instance.controls[k].cost;
  }
  return c;
}

std::size_t pct_of(int pct, std::size_t n) {
  return static_cast<std::size_t>(pct) * n / 100;
}

// Index range [lo, hi) for one mating stratum.
struct Stratum {
  std::size_t lo, hi;
  std::size_t draw(Rng& rng) const {
    return static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(lo),
                        static_cast<std::int64_t>(hi) - 1));
  }
};

}  // namespace

std::vector<Violation> validate(const GaSettings& s) {
  std::vector<Violation> out;
  auto pct = [&out](const char* name, int v) {
    if (v < 0 || v > 100) out.push_back({name, "must lie in [0,100]"});
  };
  pct("two_point_pct", s.two_point_pct);
  pct("elitism_pct", s.elitism_pct);
  pct("mix_good_good", s.mix_good_good);
  pct("mix_good_bad", s.mix_good_bad);
  pct("mix_bad_bad", s.mix_bad_bad);
  pct("good_fraction_pct", s.good_fraction_pct);
  if (s.mix_good_good + s.mix_good_bad + s.mix_bad_bad != 100) {
    out.push_back({"mix_*", "mix percents must sum to 100"});
  }
  if (s.population_size < 2) {
    out.push_back({"population_size", "must be >= 2"});
  }
  return out;
}

Selection Chromosome::selection() const {
  Selection s;
  for (std::size_t k = 0; k < genes.size(); ++k) {
    if (genes[k]) s.members.push_back(k);
  }
  return s;
}

void evaluate(const Instance& instance, Chromosome& ch) {
  kernels::evaluate_rows_serial(instance, ch.genes, {&ch.cost, 1},
                                {&ch.expenditure, 1});
}

void evaluate(const Instance& instance, Population& population,
              bool parallel) {
  const std::size_t n_k = instance.num_controls();
  const std::size_t rows = population.size();
  std::vector<std::uint8_t> genes(rows * n_k);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy(population[r].genes.begin(), population[r].genes.end(),
              genes.begin() + static_cast<std::ptrdiff_t>(r * n_k));
  }
  std::vector<Money> cost(rows);
  std::vector<double> exp(rows);
  kernels::evaluate_rows(parallel ? kernels::Exec::kParallel
                                  : kernels::Exec::kSerial,
                         instance, genes, cost, exp);
  for (std::size_t r = 0; r < rows; ++r) {
    population[r].cost = cost[r];
    population[r].expenditure = exp[r];
  }
}

void sort_population(Population& population) {
  std::stable_sort(population.begin(), population.end(),
                   [](const Chromosome& a, const Chromosome& b) {
                     return a.expenditure < b.expenditure;
                   });
}

void swap_range(Chromosome& a, Chromosome& b, std::size_t l, std::size_t r) {
  for (std::size_t i = l; i <= r && i < a.genes.size(); ++i) {
    std::swap(a.genes[i], b.genes[i]);
  }
}

void swap_first_half(Chromosome& a, Chromosome& b) {
  const std::size_t half = a.genes.size() / 2;
  for (std::size_t i = 0; i < half; ++i) std::swap(a.genes[i], b.genes[i]);
}

std::pair<Chromosome, Chromosome> merge(const Chromosome& a,
                                        const Chromosome& b,
                                        const GaSettings& settings, Rng& rng) {
  Chromosome x = a;
  Chromosome y = b;
  const auto n = static_cast<std::int64_t>(a.genes.size());
  if (rng.uniform_int(0, 99) < settings.two_point_pct) {
    const auto l = rng.uniform_int(0, n - 1);
    const auto r = rng.uniform_int(l, n - 1);
    swap_range(x, y, static_cast<std::size_t>(l), static_cast<std::size_t>(r));
  } else {
    swap_first_half(x, y);
  }
  return {std::move(x), std::move(y)};
}

Population init_population(const Instance& instance,
                           const GaSettings& settings, Rng& rng) {
  const std::size_t n_k = instance.num_controls();
  Population pop(settings.population_size);
  for (auto& ch : pop) {
    ch.genes.resize(n_k);
    for (int attempt = 0; attempt < kResampleAttempts; ++attempt) {
      for (auto& g : ch.genes) g = static_cast<std::uint8_t>(rng.next() >> 63);
      evaluate(instance, ch);
      if (within_cap(instance, ch)) break;
    }
    if (!within_cap(instance, ch)) {
      std::fill(ch.genes.begin(), ch.genes.end(), 0);
      evaluate(instance, ch);
    }
  }
  sort_population(pop);
  return pop;
}

Population crossover_generation(const Population& population,
                                const Instance& instance,
                                const GaSettings& settings, Rng& rng) {
  const std::size_t n = population.size();
  const std::size_t target = settings.population_size;
  const std::size_t elites = std::min(n, pct_of(settings.elitism_pct, n));
  Population next(population.begin(),
                  population.begin() + static_cast<std::ptrdiff_t>(elites));
  next.reserve(target);

  std::size_t good = pct_of(settings.good_fraction_pct, n);
  const Stratum all{0, n};
  const Stratum good_s = good == 0 ? all : Stratum{0, good};
  const Stratum bad_s = good >= n ? all : Stratum{good, n};

  Population children;
  const std::size_t pairs = target > elites ? target - elites : 0;
  for (std::size_t t = 0; t < pairs && next.size() + children.size() < target;
       ++t) {
    const auto y = rng.uniform_int(0, 99);
    std::size_t ii, jj;
    if (y < settings.mix_good_good) {
      ii = good_s.draw(rng);
      jj = good_s.draw(rng);
    } else if (y < settings.mix_good_good + settings.mix_good_bad) {
      ii = good_s.draw(rng);
      jj = bad_s.draw(rng);
    } else {
      ii = bad_s.draw(rng);
      jj = bad_s.draw(rng);
    }
    auto [a, b] = merge(population[ii], population[jj], settings, rng);
    for (Chromosome* c : {&a, &b}) {
      c->cost = gene_cost(instance, c->genes);
      if (within_cap(instance, *c) && next.size() + children.size() < target) {
        children.push_back(std::move(*c));
      }
    }
  }
  evaluate(instance, children, settings.parallel_eval);
  for (auto& c : children) next.push_back(std::move(c));
  sort_population(next);
  return next;
}

Population mutate_generation(const Population& population,
                             const Instance& instance,
                             const GaSettings& settings, Rng& rng) {
  const std::size_t n = population.size();
  const std::size_t elites = std::min(n, pct_of(settings.elitism_pct, n));
  const auto n_k = static_cast<std::int64_t>(instance.num_controls());
  Population next = population;
  for (std::size_t i = elites; i < n; ++i) {
    auto& genes = next[i].genes;
    for (std::size_t b = 0; b < settings.mutation_bits; ++b) {
      const auto pos = static_cast<std::size_t>(rng.uniform_int(0, n_k - 1));
      genes[pos] ^= 1U;
    }
  }
  Population mutants(next.begin() + static_cast<std::ptrdiff_t>(elites),
                     next.end());
  evaluate(instance, mutants, settings.parallel_eval);
  for (std::size_t i = elites; i < n; ++i) {
    // A mutant over the budget cap is replaced by its parent.
    next[i] = within_cap(instance, mutants[i - elites]) ? mutants[i - elites]
                                                        : population[i];
  }
  sort_population(next);
  return next;
}

Solution solve(const Instance& instance, const GaSettings& settings,
               GaTrace* trace, const Deadline& deadline) {
  require_valid(instance);
  if (const auto bad = validate(settings); !bad.empty()) {
    throw ParamError("invalid GA settings: " + bad.front().field + " " +
                     bad.front().rule);
  }
  if (instance.num_controls() == 0) {
    throw ParamError("ga::solve: empty control catalog");
  }

  Rng init_rng(Rng::derive(settings.seed, 0));
  Population pop = init_population(instance, settings, init_rng);
  Chromosome best = pop.front();
  if (trace != nullptr) trace->best_per_generation = {best.expenditure};

  auto track = [&best](const Population& p) {
    if (!p.empty() && definitely_less(p.front().expenditure, best.expenditure)) {
      best = p.front();
    }
  };

  for (std::size_t gen = 1; gen <= settings.limit; ++gen) {
    check_deadline(deadline);
    Rng rng(Rng::derive(settings.seed, gen));
    Population crossed = crossover_generation(pop, instance, settings, rng);
    if (crossed.empty()) crossed = pop;
    track(crossed);
    pop = mutate_generation(crossed, instance, settings, rng);
    track(pop);
    if (trace != nullptr) trace->best_per_generation.push_back(best.expenditure);
  }
  return make_solution(instance, best.selection(), best.cost);
}

}  // namespace riskknap::ga
