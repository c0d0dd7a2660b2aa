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

#include "riskknap/exact_dp.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace riskknap::dp {

namespace {

std::size_t words_for(std::size_t num_controls) {
  return (num_controls + 63) / 64;
}

// A candidate state inside a merge: (source frontier, index).
struct Ref {
  const Frontier* from;
  std::size_t index;
  double risk;
};

Frontier collect(const std::vector<Ref>& kept, const std::vector<char>& alive,
                 std::size_t num_threats, std::size_t num_controls) {
  Frontier out(num_threats, num_controls);
  for (std::size_t s = 0; s < kept.size(); ++s) {
    if (!alive[s]) continue;
    out.push_back(kept[s].from->survival(kept[s].index),
                  kept[s].from->chosen(kept[s].index));
  }
  return out;
}

std::size_t controls_capacity(const Frontier& f) {
  return f.empty() ? 0 : f.chosen(0).size() * 64;
}

}  // namespace

Frontier::Frontier(std::size_t num_threats, std::size_t num_controls)
    : num_threats_(num_threats), words_(words_for(num_controls)) {}

Selection Frontier::selection(std::size_t s) const {
  Selection out;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = chosen_[s * words_ + w];
    while (bits != 0) {
      const int b = __builtin_ctzll(bits);
      out.members.push_back(w * 64 + static_cast<std::size_t>(b));
      bits &= bits - 1;
    }
  }
  return out;
}

void Frontier::push_back(std::span<const double> survival,
                         std::span<const std::uint64_t> chosen) {
  survival_.insert(survival_.end(), survival.begin(), survival.end());
  chosen_.insert(chosen_.end(), chosen.begin(), chosen.end());
  ++count_;
}

void Frontier::push_extended(std::span<const double> survival,
                             std::span<const std::uint64_t> chosen,
                             std::span<const double> pi, std::size_t k) {
  for (std::size_t i = 0; i < num_threats_; ++i) {
    survival_.push_back(survival[i] * pi[i]);
  }
  const std::size_t base = chosen_.size();
  chosen_.insert(chosen_.end(), chosen.begin(), chosen.end());
  chosen_[base + k / 64] |= std::uint64_t{1} << (k % 64);
  ++count_;
}

void Frontier::clear() {
  survival_.clear();
  chosen_.clear();
  count_ = 0;
}

BestTable build_best_table(const Instance& instance,
                           std::span<const std::size_t> ordering) {
  const std::size_t n_t = instance.num_threats();
  BestTable table;
  table.best.assign(ordering.size() + 1, std::vector<double>(n_t, 1.0));
  for (std::size_t j = ordering.size(); j-- > 0;) {
    const auto& pi = instance.controls.at(ordering[j]).survival;
    for (std::size_t i = 0; i < n_t; ++i) {
      table.best[j][i] = table.best[j + 1][i] * pi[i];
    }
  }
  return table;
}

bool pareto_dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ParamError("pareto_dominates: length mismatch (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

double projected_advantage(const Instance& instance, std::span<const double> p,
                           std::span<const double> q,
                           std::span<const double> best_row) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    const double w = instance.frequencies[i] * instance.losses[i];
    sum += d < 0.0 ? w * d * best_row[i] : w * d;
  }
  return sum;
}

Frontier pareto_prune(const Frontier& new_states, const Frontier& old_states) {
  const std::size_t n_t =
      old_states.empty() ? new_states.num_threats() : old_states.num_threats();
  const std::size_t n_k =
      std::max(controls_capacity(old_states), controls_capacity(new_states));
  std::vector<Ref> kept;
  std::vector<char> alive;
  kept.reserve(old_states.size() + new_states.size());
  // The old cell is already a Pareto frontier.
  for (std::size_t s = 0; s < old_states.size(); ++s) {
    kept.push_back({&old_states, s, 0.0});
    alive.push_back(1);
  }
  for (std::size_t c = 0; c < new_states.size(); ++c) {
    const auto cand = new_states.survival(c);
    bool dropped = false;
    for (std::size_t s = 0; s < kept.size() && !dropped; ++s) {
      if (alive[s] && pareto_dominates(kept[s].from->survival(kept[s].index),
                                       cand)) {
        dropped = true;
      }
    }
    if (dropped) continue;
    for (std::size_t s = 0; s < kept.size(); ++s) {
      if (alive[s] &&
          pareto_dominates(cand, kept[s].from->survival(kept[s].index))) {
        alive[s] = 0;
      }
    }
    kept.push_back({&new_states, c, 0.0});
    alive.push_back(1);
  }
  return collect(kept, alive, n_t, n_k);
}

Frontier projection_prune(const Frontier& new_states,
                          const Frontier& old_states,
                          std::span<const double> best_row,
                          const Instance& instance) {
  const std::size_t n_t = instance.num_threats();
  const std::size_t n_k =
      std::max(controls_capacity(old_states), controls_capacity(new_states));
  // adv(p over q) = risk(p) - risk(q) + sum over d_i < 0 of slack_i * |d_i|,
  // with slack_i = F_i L_i (1 - best_i) >= 0. The running sum only grows,
  // so a check stops once it passes the tolerance.
  std::vector<double> slack(n_t);
  for (std::size_t i = 0; i < n_t; ++i) {
    slack[i] = instance.frequencies[i] * instance.losses[i] * (1.0 - best_row[i]);
  }
  auto discards = [&](std::span<const double> p, double risk_p,
                      std::span<const double> q, double risk_q) {
    const double tol = kTolerance * std::max({1.0, risk_p, risk_q});
    const double gap = tol - (risk_p - risk_q);
    if (gap < 0.0) return false;
    double extra = 0.0;
    for (std::size_t i = 0; i < n_t; ++i) {
      extra += slack[i] * std::max(0.0, q[i] - p[i]);
    }
    return extra <= gap;
  };

  std::vector<Ref> kept;
  std::vector<char> alive;
  kept.reserve(old_states.size() + new_states.size());

  // Old states are not re-checked against one another. That pass only
  // catches pairs split by the control just processed and costs more
  // than it removes.
  for (std::size_t s = 0; s < old_states.size(); ++s) {
    kept.push_back({&old_states, s, risk_of(instance, old_states.survival(s))});
    alive.push_back(1);
  }
  for (std::size_t c = 0; c < new_states.size(); ++c) {
    const auto cand = new_states.survival(c);
    const double cand_risk = risk_of(instance, cand);
    bool dropped = false;
    for (std::size_t s = 0; s < kept.size() && !dropped; ++s) {
      dropped = alive[s] && discards(kept[s].from->survival(kept[s].index),
                                     kept[s].risk, cand, cand_risk);
    }
    if (dropped) continue;
    for (std::size_t s = 0; s < kept.size(); ++s) {
      if (alive[s] && discards(cand, cand_risk,
                               kept[s].from->survival(kept[s].index),
                               kept[s].risk)) {
        alive[s] = 0;
      }
    }
    kept.push_back({&new_states, c, cand_risk});
    alive.push_back(1);
  }
  return collect(kept, alive, n_t, n_k);
}

double stop_bound(double exp_best, const Instance& instance) {
  return exp_best - min_premium(instance) -
         static_cast<double>(instance.x_init);
}

Selection extract_solution(const Frontier& frontier, std::size_t s,
                           const Instance& instance, Money x,
                           double expected_expenditure) {
  Selection selection = frontier.selection(s);
  const SurvivalVector recomputed = combined_survival(instance, selection);
  const auto stored = frontier.survival(s);
  for (std::size_t i = 0; i < recomputed.size(); ++i) {
    if (!approx_equal(recomputed[i], stored[i])) {
      throw SolverBug("provenance does not reproduce the stored survival "
                      "vector at threat " + std::to_string(i));
    }
  }
  const double e = expenditure(instance, selection, x);
  if (!approx_equal(e, expected_expenditure)) {
    throw SolverBug("provenance re-evaluates to " + std::to_string(e) +
                    ", solver recorded " +
                    std::to_string(expected_expenditure));
  }
  return selection;
}

Solution solve(const Instance& instance, const DpConfig& config,
               DpStats* stats) {
  require_valid(instance);
  const std::size_t n_k = instance.num_controls();
  const std::size_t n_t = instance.num_threats();
  if (n_k == 0) throw ParamError("dp::solve: empty control catalog");

  std::vector<std::size_t> order(n_k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (config.sort_by_cost) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return instance.controls[a].cost <
                              instance.controls[b].cost;
                     });
  }

  const Money step = cost_gcd(instance);
  std::vector<std::size_t> units(n_k);
  std::size_t max_units = 0;
  for (std::size_t j = 0; j < n_k; ++j) {
    units[j] = static_cast<std::size_t>(instance.controls[order[j]].cost / step);
    max_units = std::max(max_units, units[j]);
  }
  const BestTable best = build_best_table(instance, order);
  const double p_min = min_premium(instance);
  const double x_init = static_cast<double>(instance.x_init);

  Frontier start(n_t, n_k);
  start.push_back(instance.p_init,
                  std::vector<std::uint64_t>(words_for(n_k), 0));

  double exp_best = risk_of(instance, instance.p_init) + x_init;
  Money x_star = 0;
  Frontier winner = start;

  DpStats local;
  DpStats& st = stats != nullptr ? *stats : local;
  st = DpStats{};
  st.grid_step = step;
  st.columns_evaluated = 1;
  st.max_frontier = 1;
  if (config.record_frontier_sizes) {
    st.frontier_sizes.emplace_back(n_k + 1, 1);
  }

  std::vector<CurvePoint> curve;
  if (config.record_curve) curve.push_back({0, exp_best});

  // Only the last max_units + 1 columns are ever read.
  const std::size_t ring_size = max_units + 1;
  std::vector<std::vector<Frontier>> ring(ring_size,
                                          std::vector<Frontier>(n_k + 1));
  for (auto& f : ring[0]) f = start;

  for (std::size_t m = 1;; ++m) {
    const Money x = static_cast<Money>(m) * step;
    if (static_cast<double>(x) + x_init > exp_best - p_min) break;
    if (instance.budget_cap && x > *instance.budget_cap) break;
    check_deadline(config.deadline);

    auto& column = ring[m % ring_size];
    column[0] = start;
    for (std::size_t j = 1; j <= n_k; ++j) {
      const std::size_t k = order[j - 1];
      if (units[j - 1] > m) {
        column[j] = column[j - 1];
        continue;
      }
      const Frontier& source = ring[(m - units[j - 1]) % ring_size][j - 1];
      Frontier fresh(n_t, n_k);
      const auto& pi = instance.controls[k].survival;
      for (std::size_t s = 0; s < source.size(); ++s) {
        fresh.push_extended(source.survival(s), source.chosen(s), pi, k);
      }
      st.states_generated += fresh.size();
      column[j] = config.dominance == Dominance::kPareto
                      ? pareto_prune(fresh, column[j - 1])
                      : projection_prune(fresh, column[j - 1], best.best[j],
                                         instance);
    }

    const Frontier& last = column[n_k];
    double column_best = 0.0;
    std::size_t column_arg = 0;
    for (std::size_t s = 0; s < last.size(); ++s) {
      const double e =
          risk_of(instance, last.survival(s)) + static_cast<double>(x) + x_init;
      if (s == 0 || e < column_best) {
        column_best = e;
        column_arg = s;
      }
    }
    if (definitely_less(column_best, exp_best)) {
      exp_best = column_best;
      x_star = x;
      winner = Frontier(n_t, n_k);
      winner.push_back(last.survival(column_arg), last.chosen(column_arg));
    }

    if (config.record_curve) curve.push_back({x, column_best});
    st.last_evaluated_x = x;
    ++st.columns_evaluated;
    for (const auto& f : column) st.max_frontier = std::max(st.max_frontier, f.size());
    if (config.record_frontier_sizes) {
      auto& row = st.frontier_sizes.emplace_back();
      row.reserve(n_k + 1);
      for (const auto& f : column) row.push_back(f.size());
    }
  }

  Selection selection = extract_solution(winner, 0, instance, x_star, exp_best);
  Solution solution = make_solution(instance, std::move(selection), x_star);
  solution.curve = std::move(curve);
  return solution;
}

}  // namespace riskknap::dp
