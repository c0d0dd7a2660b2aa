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

#include "riskknap/greedy.hpp"

#include <numeric>
#include <utility>
#include <vector>

namespace riskknap::greedy {

namespace {

struct Removal {
  std::size_t position;
  double expenditure;
};

// Lowest expenditure over all single removals from `current`.
std::optional<Removal> best_removal(const Instance& instance,
                                    const Selection& current) {
  const Money cost = total_cost(instance, current);
  std::optional<Removal> best;
  for (std::size_t pos = 0; pos < current.size(); ++pos) {
    Selection without = current;
    without.members.erase(without.members.begin() +
                          static_cast<std::ptrdiff_t>(pos));
    const Money c = cost - instance.controls[current.members[pos]].cost;
    const double e = expenditure(instance, without, c);
    if (!best || definitely_less(e, best->expenditure)) best = Removal{pos, e};
  }
  return best;
}

void remove_at(Selection& s, std::size_t pos) {
  s.members.erase(s.members.begin() + static_cast<std::ptrdiff_t>(pos));
}

}  // namespace

std::optional<std::size_t> find_worst_control(const Instance& instance,
                                              const Selection& current,
                                              const GreedyConfig& config) {
  if (current.empty()) return std::nullopt;
  if (config.keep_last_control && current.size() == 1) return std::nullopt;
  const Selection sorted = make_selection(current.members);
  const double now = expenditure(instance, sorted, total_cost(instance, sorted));
  const auto best = best_removal(instance, sorted);
  if (!best || !definitely_less(best->expenditure, now)) return std::nullopt;
  return sorted.members[best->position];
}

Solution solve(const Instance& instance, const GreedyConfig& config) {
  require_valid(instance);
  std::vector<std::size_t> all(instance.num_controls());
  std::iota(all.begin(), all.end(), std::size_t{0});
  Selection current{std::move(all)};

  if (instance.budget_cap) {
    while (total_cost(instance, current) > *instance.budget_cap) {
      const auto forced = best_removal(instance, current);
      remove_at(current, forced->position);
    }
  }

  while (const auto worst = find_worst_control(instance, current, config)) {
    for (std::size_t pos = 0; pos < current.size(); ++pos) {
      if (current.members[pos] == *worst) {
        remove_at(current, pos);
        break;
      }
    }
  }
  const Money x = total_cost(instance, current);
  return make_solution(instance, std::move(current), x);
}

}  // namespace riskknap::greedy
