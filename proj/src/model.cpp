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

#include "riskknap/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace riskknap {

namespace {

void check_selection(const Instance& instance, const Selection& selection) {
  std::vector<std::size_t> sorted = selection.members;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= instance.num_controls()) {
      throw InvalidSelection("control index " + std::to_string(sorted[i]) +
                             " out of range (catalog has " +
                             std::to_string(instance.num_controls()) + ")");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidSelection("control index " + std::to_string(sorted[i]) +
                             " selected twice");
    }
  }
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

bool Selection::contains(std::size_t k) const {
  return std::find(members.begin(), members.end(), k) != members.end();
}

Selection make_selection(std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Selection{std::move(members)};
}

bool approx_equal(double a, double b, double eps) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= eps * scale;
}

bool definitely_less(double a, double b, double eps) {
  return a < b && !approx_equal(a, b, eps);
}

std::vector<Violation> validate(const Instance& instance) {
  std::vector<Violation> out;
  const std::size_t n_t = instance.num_threats();
  auto add = [&out](std::string field, std::string rule) {
    out.push_back({std::move(field), std::move(rule)});
  };
  if (n_t == 0) add("losses", "at least one threat required");
  if (instance.frequencies.size() != n_t) {
    add("frequencies", "length " + std::to_string(instance.frequencies.size()) +
                           " != number of threats " + std::to_string(n_t));
  }
  if (instance.p_init.size() != n_t) {
    add("p_init", "length " + std::to_string(instance.p_init.size()) +
                      " != number of threats " + std::to_string(n_t));
  }
  for (std::size_t i = 0; i < n_t; ++i) {
    if (!(std::isfinite(instance.losses[i]) && instance.losses[i] >= 0.0)) {
      add("losses[" + std::to_string(i) + "]", "must be >= 0");
    }
  }
  for (std::size_t i = 0; i < instance.frequencies.size(); ++i) {
    const double f = instance.frequencies[i];
    if (!(std::isfinite(f) && f >= 0.0)) {
      add("frequencies[" + std::to_string(i) + "]", "must be >= 0");
    }
  }
  for (std::size_t i = 0; i < instance.p_init.size(); ++i) {
    if (!is_probability(instance.p_init[i])) {
      add("p_init[" + std::to_string(i) + "]", "must lie in [0,1]");
    }
  }
  if (instance.x_init < 0) add("x_init", "must be >= 0");
  if (instance.budget_cap && *instance.budget_cap < 0) {
    add("budget_cap", "must be >= 0");
  }
  for (std::size_t k = 0; k < instance.num_controls(); ++k) {
    const Control& c = instance.controls[k];
    const std::string name = "controls[" + std::to_string(k) + "]";
    if (c.cost < 1) add(name + ".cost", "must be a positive integer");
    if (c.survival.size() != n_t) {
      add(name + ".survival", "length " + std::to_string(c.survival.size()) +
                                  " != number of threats " +
                                  std::to_string(n_t));
    }
    for (std::size_t i = 0; i < c.survival.size(); ++i) {
      if (!is_probability(c.survival[i])) {
        add(name + ".survival[" + std::to_string(i) + "]",
            "must lie in [0,1]");
      }
    }
  }
  return out;
}

void require_valid(const Instance& instance) {
  const auto violations = validate(instance);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  for (const auto& v : violations) msg << "\n  " << v.field << ": " << v.rule;
  throw ValidationError(msg.str());
}

Money total_cost(const Instance& instance, const Selection& selection) {
  check_selection(instance, selection);
  Money sum = 0;
  for (std::size_t k : selection.members) sum += instance.controls[k].cost;
  return sum;
}

SurvivalVector combined_survival(const Instance& instance,
                                 const Selection& selection) {
  check_selection(instance, selection);
  SurvivalVector p = instance.p_init;
  for (std::size_t k : selection.members) {
    const auto& pi = instance.controls[k].survival;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] *= pi[i];
  }
  return p;
}

double risk_of(const Instance& instance, std::span<const double> survival) {
  double sum = 0.0;
  for (std::size_t i = 0; i < survival.size(); ++i) {
    sum += instance.frequencies[i] * survival[i] * instance.losses[i];
  }
  return sum;
}

double risk(const Instance& instance, const Selection& selection) {
  return risk_of(instance, combined_survival(instance, selection));
}

double expenditure(const Instance& instance, const Selection& selection,
                   Money x) {
  const Money cost = total_cost(instance, selection);
  if (x < 0 || cost > x) {
    throw CostExceedsInvestment("selection costs " + std::to_string(cost) +
                                " but investment is " + std::to_string(x));
  }
  return risk(instance, selection) + static_cast<double>(x) +
         static_cast<double>(instance.x_init);
}

double min_premium(const Instance& instance) {
  std::vector<std::size_t> all(instance.num_controls());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return risk(instance, Selection{std::move(all)});
}

Money cost_gcd(const Instance& instance) {
  if (instance.controls.empty()) {
    throw ParamError("cost_gcd: empty control catalog");
  }
  Money g = 0;
  for (const auto& c : instance.controls) g = std::gcd(g, c.cost);
  return g;
}

Solution make_solution(const Instance& instance, Selection selection,
                       Money x) {
  Solution s;
  s.selection = make_selection(std::move(selection.members));
  s.x_star = x;
  s.residual_risk = risk(instance, s.selection);
  s.expenditure = expenditure(instance, s.selection, x);
  return s;
}

std::vector<std::string> selection_ids(const Instance& instance,
                                       const Selection& selection) {
  check_selection(instance, selection);
  std::vector<std::string> ids;
  ids.reserve(selection.size());
  for (std::size_t k : selection.members) ids.push_back(instance.controls[k].id);
  return ids;
}

}  // namespace riskknap
