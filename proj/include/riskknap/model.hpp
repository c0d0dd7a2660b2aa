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

#ifndef RISKKNAP_MODEL_HPP_
#define RISKKNAP_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskknap/errors.hpp"

namespace riskknap {

// Costs and investments are exact integers; they index the DP grid.
using Money = std::int64_t;
using SurvivalVector = std::vector<double>;

struct Control {
  std::string id;
  Money cost = 0;
  SurvivalVector survival;  // per-threat probability of passing this control
};

// A risk-treatment problem: threats (loss, frequency, initial survival), a
// catalog of independent controls and the money already spent.
struct Instance {
  std::vector<double> losses;
  std::vector<double> frequencies;
  SurvivalVector p_init;
  Money x_init = 0;
  std::vector<Control> controls;
  std::optional<Money> budget_cap;

  std::size_t num_threats() const { return losses.size(); }
  std::size_t num_controls() const { return controls.size(); }
};

// Indices into Instance::controls. Kept sorted and unique by the solvers.
struct Selection {
  std::vector<std::size_t> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  bool contains(std::size_t k) const;
  friend bool operator==(const Selection&, const Selection&) = default;
};

Selection make_selection(std::vector<std::size_t> members);

struct CurvePoint {
  Money investment = 0;
  double best_expenditure = 0.0;
};

struct Solution {
  Selection selection;
  Money x_star = 0;
  double expenditure = 0.0;
  double residual_risk = 0.0;
  std::vector<CurvePoint> curve;  // populated only on request
};

struct Violation {
  std::string field;
  std::string rule;
};

// Tolerance used for every expenditure comparison.
inline constexpr double kTolerance = 1e-9;

bool approx_equal(double a, double b, double eps = kTolerance);
// a < b by more than the tolerance.
bool definitely_less(double a, double b, double eps = kTolerance);

std::vector<Violation> validate(const Instance& instance);
// Throws ValidationError listing every violation.
void require_valid(const Instance& instance);

Money total_cost(const Instance& instance, const Selection& selection);
SurvivalVector combined_survival(const Instance& instance,
                                 const Selection& selection);
double risk(const Instance& instance, const Selection& selection);
// Risk of an arbitrary survival vector: sum_i F[i] * p[i] * L[i].
double risk_of(const Instance& instance, std::span<const double> survival);
// x_init + x + risk. Requires total_cost(selection) <= x.
double expenditure(const Instance& instance, const Selection& selection,
                   Money x);
// Risk with every catalog control installed.
double min_premium(const Instance& instance);
Money cost_gcd(const Instance& instance);

// Builds the Solution record for a selection bought at investment x.
Solution make_solution(const Instance& instance, Selection selection,
                       Money x);

std::vector<std::string> selection_ids(const Instance& instance,
                                       const Selection& selection);

}  // namespace riskknap

#endif  // RISKKNAP_MODEL_HPP_
