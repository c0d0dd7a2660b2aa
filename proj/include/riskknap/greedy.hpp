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

#ifndef RISKKNAP_GREEDY_HPP_
#define RISKKNAP_GREEDY_HPP_

#include <cstddef>
#include <optional>

#include "riskknap/model.hpp"

namespace riskknap::greedy {

struct GreedyConfig {
  // Never shrink below one control. On by default; switching it off lets
  // the search reach the empty selection.
  bool keep_last_control = true;
};

// Removal that lowers the expenditure of `current` the most, if any removal
// lowers it at all. Ties go to the lowest control index.
std::optional<std::size_t> find_worst_control(const Instance& instance,
                                              const Selection& current,
                                              const GreedyConfig& config = {});

// Starts from the whole catalog and removes controls one at a time while
// doing so helps. With a budget cap the catalog is first trimmed, cheapest
// expenditure first, until it fits.
Solution solve(const Instance& instance, const GreedyConfig& config = {});

}  // namespace riskknap::greedy

#endif  // RISKKNAP_GREEDY_HPP_
