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

#ifndef RISKKNAP_EXACT_DP_HPP_
#define RISKKNAP_EXACT_DP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "riskknap/deadline.hpp"
#include "riskknap/model.hpp"

namespace riskknap::dp {

enum class Dominance { kPareto, kProjection };

struct DpConfig {
  Dominance dominance = Dominance::kProjection;
  // Consider cheap controls first, costlier ones last.
  bool sort_by_cost = false;
  bool record_curve = false;
  // Fill DpStats::frontier_sizes (one row per evaluated grid column).
  bool record_frontier_sizes = false;
  Deadline deadline;
};

struct DpStats {
  Money grid_step = 0;
  Money last_evaluated_x = 0;
  std::size_t columns_evaluated = 0;
  std::size_t max_frontier = 0;
  std::size_t states_generated = 0;
  // frontier_sizes[m][j]: states kept at cell (controls 0..j-1, x = m*C).
  std::vector<std::vector<std::size_t>> frontier_sizes;
};

// Non-dominated DP states at one cell. Each state carries its survival
// vector and the bit-set of controls that produced it. Stored flat.
class Frontier {
 public:
  Frontier() = default;
  Frontier(std::size_t num_threats, std::size_t num_controls);

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t num_threats() const { return num_threats_; }

  std::span<const double> survival(std::size_t s) const {
    return {survival_.data() + s * num_threats_, num_threats_};
  }
  std::span<const std::uint64_t> chosen(std::size_t s) const {
    return {chosen_.data() + s * words_, words_};
  }
  bool has_control(std::size_t s, std::size_t k) const {
    return (chosen_[s * words_ + k / 64] >> (k % 64)) & 1U;
  }
  Selection selection(std::size_t s) const;

  void push_back(std::span<const double> survival,
                 std::span<const std::uint64_t> chosen);
  // Appends the state with control k added: survival multiplied by pi.
  void push_extended(std::span<const double> survival,
                     std::span<const std::uint64_t> chosen,
                     std::span<const double> pi, std::size_t k);
  void clear();

 private:
  std::size_t num_threats_ = 0;
  std::size_t words_ = 0;
  std::size_t count_ = 0;
  std::vector<double> survival_;
  std::vector<std::uint64_t> chosen_;
};

// best[j][i] = prod over ordering positions q >= j of pi(order[q])[i];
// best[n_k] is all ones.
struct BestTable {
  std::vector<std::vector<double>> best;
};

BestTable build_best_table(const Instance& instance,
                           std::span<const std::size_t> ordering);

// a[i] <= b[i] for every threat. Throws ParamError on length mismatch.
bool pareto_dominates(std::span<const double> a, std::span<const double> b);

// Largest possible risk difference risk(p) - risk(q) over every future
// that multiplies both vectors by the same survival factors bounded below
// by best_row: p's gains are shrunk to best_row, its losses kept whole.
// A result <= 0 means p is never worse than q.
double projected_advantage(const Instance& instance, std::span<const double> p,
                           std::span<const double> q,
                           std::span<const double> best_row);

// Merge old_states (inserted first) and new_states into one non-dominated
// frontier. A candidate is dropped when a kept state dominates it, so among
// equivalent states the earlier one survives.
Frontier pareto_prune(const Frontier& new_states, const Frontier& old_states);
Frontier projection_prune(const Frontier& new_states,
                          const Frontier& old_states,
                          std::span<const double> best_row,
                          const Instance& instance);

// exp_best - min_premium - x_init: the largest investment worth evaluating.
double stop_bound(double exp_best, const Instance& instance);

// Selection recorded in frontier state `s`, checked against the expected
// expenditure at investment x. Throws SolverBug on mismatch.
Selection extract_solution(const Frontier& frontier, std::size_t s,
                           const Instance& instance, Money x,
                           double expected_expenditure);

// Minimizes x + x_init + risk over all selections and grid investments.
Solution solve(const Instance& instance, const DpConfig& config = {},
               DpStats* stats = nullptr);

}  // namespace riskknap::dp

#endif  // RISKKNAP_EXACT_DP_HPP_
