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

#ifndef RISKKNAP_ORACLE_HPP_
#define RISKKNAP_ORACLE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "riskknap/kernels.hpp"
#include "riskknap/model.hpp"

namespace riskknap::oracle {

inline constexpr std::size_t kMaxBruteForceControls = 24;

// Exhaustive search over every selection with x = total cost. Ties are
// broken by smaller investment, then by the lexicographically smallest
// index list. Throws SizeGuardError above kMaxBruteForceControls.
Solution brute_force(const Instance& instance,
                     kernels::Exec exec = kernels::Exec::kParallel);

enum class UtilityKind { kLinear, kLogShifted, kSqrt, kExponential };

// Parametric wealth utilities.
//   kLinear       U(w) = w                      (risk neutral)
//   kLogShifted   U(w) = log(w + param)
//   kSqrt         U(w) = sqrt(w + param)
//   kExponential  U(w) = (1 - exp(-param * w)) / param,  param > 0
struct UtilitySpec {
  UtilityKind kind = UtilityKind::kLinear;
  double param = 0.0;

  // Throws DomainError when w is outside the domain.
  double operator()(double w) const;
  std::string name() const;
};

UtilitySpec parse_utility(const std::string& text);

// Samples U' > 0 and U'' < 0 by central differences on [lo, hi].
bool is_increasing_concave(const UtilitySpec& u, double lo, double hi,
                           int samples = 64);

// pmf[z] of a Poisson count, truncated once the remaining tail is < tail.
std::vector<double> truncated_poisson(double mean, double tail = 1e-12);

struct WealthModel {
  double w0 = 0.0;
  std::vector<double> indemnity;  // per threat, 0 <= I[i] <= L[i]
};

// W0 - x - risk(selection).
double expected_wealth(const Instance& instance, const Selection& selection,
                       Money x, double w0);

// Expected utility of final wealth
//   W(z) = W0 - premium - x + sum_i z_i (I_i - L_i),
//   premium = sum_i F_i p_i I_i,
// with independent Poisson(F_i p_i) occurrence counts z_i. Walks the full
// joint support, so it refuses (SizeGuardError) above 5e7 outcomes.
double expected_utility(const Instance& instance, const Selection& selection,
                        Money x, const WealthModel& wealth,
                        const UtilitySpec& utility);

struct InsuranceReport {
  std::vector<double> alphas;
  std::vector<double> values;  // E[U] at I = alpha * L
  bool max_at_full = false;    // alpha = 1 attains the max within 1e-9 relative
  bool non_decreasing = false;
  bool passed() const { return max_at_full; }
};

InsuranceReport verify_full_insurance(const Instance& instance,
                                      const Selection& selection, Money x,
                                      double w0, const UtilitySpec& utility,
                                      std::span<const double> alphas);

}  // namespace riskknap::oracle

#endif  // RISKKNAP_ORACLE_HPP_
