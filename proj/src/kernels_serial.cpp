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

#include <vector>

#include "riskknap/kernels.hpp"

namespace riskknap::kernels {

namespace {

std::vector<std::size_t> mask_members(std::uint64_t mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(__builtin_ctzll(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Depth-first walk over controls [k, n_k) below a fixed prefix.
struct Walker {
  const Instance& instance;
  std::size_t n_k;
  std::vector<std::vector<double>> stack;  // survival per depth
  EnumBest best;
  bool have = false;

  void visit(std::size_t k, std::uint64_t mask, Money cost) {
    const auto& p = stack[k];
    if (k == n_k) {
      EnumBest cand{mask, cost,
                    risk_of(instance, p) + static_cast<double>(cost) +
                        static_cast<double>(instance.x_init),
                    true};
      if (!have || better(cand, best)) {
        best = cand;
        have = true;
      }
      return;
    }
    // Without control k.
    stack[k + 1] = p;
    visit(k + 1, mask, cost);
    // With control k.
    const Money with = cost + instance.controls[k].cost;
    if (instance.budget_cap && with > *instance.budget_cap) return;
    const auto& pi = instance.controls[k].survival;
    auto& next = stack[k + 1];
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = p[i] * pi[i];
    visit(k + 1, mask | (std::uint64_t{1} << k), with);
  }
};

}  // namespace

bool better(const EnumBest& a, const EnumBest& b) {
  if (!approx_equal(a.expenditure, b.expenditure)) {
    return a.expenditure < b.expenditure;
  }
  if (a.cost != b.cost) return a.cost < b.cost;
  const auto ma = mask_members(a.mask);
  const auto mb = mask_members(b.mask);
  return ma < mb;
}

void evaluate_rows_serial(const Instance& instance,
                          std::span<const std::uint8_t> genes,
                          std::span<Money> cost,
                          std::span<double> expenditure) {
  const std::size_t n_k = instance.num_controls();
  const std::size_t n_t = instance.num_threats();
  const std::size_t rows = cost.size();
  std::vector<double> p(n_t);
  for (std::size_t r = 0; r < rows; ++r) {
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

EnumBest enumerate_shard(const Instance& instance, unsigned prefix_bits,
                         std::uint64_t prefix) {
  const std::size_t n_k = instance.num_controls();
  const std::size_t free = n_k - prefix_bits;
  Walker w{instance, free, {}, {}, false};
  // The prefix fixes controls [free, n_k).
  std::vector<double> p = instance.p_init;
  Money cost = 0;
  std::uint64_t mask = 0;
  for (unsigned b = 0; b < prefix_bits; ++b) {
    if (!((prefix >> b) & 1U)) continue;
    const std::size_t k = free + b;
    mask |= std::uint64_t{1} << k;
    cost += instance.controls[k].cost;
    const auto& pi = instance.controls[k].survival;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] *= pi[i];
  }
  if (instance.budget_cap && cost > *instance.budget_cap) return w.best;
  w.stack.assign(free + 1, p);
  w.visit(0, mask, cost);
  return w.best;
}

EnumBest enumerate_serial(const Instance& instance) {
  return enumerate_shard(instance, 0, 0);
}

}  // namespace riskknap::kernels
