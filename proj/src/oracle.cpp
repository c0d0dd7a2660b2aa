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

#include "riskknap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riskknap::oracle {

namespace {

constexpr double kSweepTolerance = 1e-9;
// Largest joint outcome space expected_utility will walk.
constexpr double kMaxOutcomes = 5e7;

Selection mask_to_selection(std::uint64_t mask) {
  Selection s;
  while (mask != 0) {
    s.members.push_back(static_cast<std::size_t>(__builtin_ctzll(mask)));
    mask &= mask - 1;
  }
  return s;
}

struct Enumerator {
  const std::vector<std::vector<double>>& pmf;
  const std::vector<double>& slope;  // I_i - L_i
  const UtilitySpec& utility;
  double total = 0.0;

  void walk(std::size_t i, double weight, double wealth) {
    if (i == pmf.size()) {
      total += weight * utility(wealth);
      return;
    }
    for (std::size_t z = 0; z < pmf[i].size(); ++z) {
      walk(i + 1, weight * pmf[i][z],
           wealth + static_cast<double>(z) * slope[i]);
    }
  }
};

}  // namespace

Solution brute_force(const Instance& instance, kernels::Exec exec) {
  require_valid(instance);
  if (instance.num_controls() > kMaxBruteForceControls) {
    throw SizeGuardError("brute force limited to " +
                         std::to_string(kMaxBruteForceControls) +
                         " controls, instance has " +
                         std::to_string(instance.num_controls()));
  }
  const kernels::EnumBest best = kernels::enumerate(exec, instance);
  return make_solution(instance, mask_to_selection(best.mask), best.cost);
}

double UtilitySpec::operator()(double w) const {
  switch (kind) {
    case UtilityKind::kLinear:
      return w;
    case UtilityKind::kLogShifted:
      if (!(w + param > 0.0)) {
        throw DomainError("log utility undefined at wealth " +
                              std::to_string(w),
                          w);
      }
      return std::log(w + param);
    case UtilityKind::kSqrt:
      if (!(w + param >= 0.0)) {
        throw DomainError("sqrt utility undefined at wealth " +
                              std::to_string(w),
                          w);
      }
      return std::sqrt(w + param);
    case UtilityKind::kExponential:
      return -std::expm1(-param * w) / param;
  }
  return w;
}

std::string UtilitySpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case UtilityKind::kLinear: return "linear";
    case UtilityKind::kLogShifted: os << "log_shifted:" << param; break;
    case UtilityKind::kSqrt: os << "sqrt:" << param; break;
    case UtilityKind::kExponential: os << "exponential_crra:" << param; break;
  }
  return os.str();
}

UtilitySpec parse_utility(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  double param = 0.0;
  if (colon != std::string::npos) {
    try {
      param = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParamError("bad utility parameter in '" + text + "'");
    }
  }
  if (kind == "linear") return {UtilityKind::kLinear, 0.0};
  if (kind == "log_shifted" || kind == "log") {
    return {UtilityKind::kLogShifted, colon == std::string::npos ? 1.0 : param};
  }
  if (kind == "sqrt") return {UtilityKind::kSqrt, param};
  if (kind == "exponential_crra" || kind == "exponential") {
    const double a = colon == std::string::npos ? 1e-5 : param;
    if (!(a > 0.0)) throw ParamError("exponential utility needs param > 0");
    return {UtilityKind::kExponential, a};
  }
  throw ParamError("unknown utility '" + text + "'");
}

bool is_increasing_concave(const UtilitySpec& u, double lo, double hi,
                           int samples) {
  const double h = std::max(1e-3, (hi - lo) * 1e-4);
  for (int s = 0; s < samples; ++s) {
    const double w = lo + h + (hi - lo - 2 * h) * s / std::max(1, samples - 1);
    const double a = u(w - h), b = u(w), c = u(w + h);
    if (!(c - a > 0.0)) return false;
    if (!(a - 2 * b + c < 0.0)) return false;
  }
  return true;
}

std::vector<double> truncated_poisson(double mean, double tail) {
  if (mean < 0.0) throw ParamError("Poisson mean must be >= 0");
  std::vector<double> pmf;
  double p = std::exp(-mean);
  double cumulative = 0.0;
  for (std::size_t z = 0;; ++z) {
    if (z > 0) p *= mean / static_cast<double>(z);
    pmf.push_back(p);
    cumulative += p;
    if (1.0 - cumulative < tail || (mean == 0.0)) break;
    if (z > 10000) break;
  }
  return pmf;
}

double expected_wealth(const Instance& instance, const Selection& selection,
                       Money x, double w0) {
  if (total_cost(instance, selection) > x) {
    throw CostExceedsInvestment("selection costs more than investment");
  }
  return w0 - static_cast<double>(x) - risk(instance, selection);
}

double expected_utility(const Instance& instance, const Selection& selection,
                        Money x, const WealthModel& wealth,
                        const UtilitySpec& utility) {
  const std::size_t n_t = instance.num_threats();
  if (wealth.indemnity.size() != n_t) {
    throw ParamError("indemnity length must equal number of threats");
  }
  if (total_cost(instance, selection) > x) {
    throw CostExceedsInvestment("selection costs more than investment");
  }
  const SurvivalVector p = combined_survival(instance, selection);
  std::vector<std::vector<double>> pmf(n_t);
  std::vector<double> slope(n_t);
  double premium = 0.0;
  for (std::size_t i = 0; i < n_t; ++i) {
    const double I = wealth.indemnity[i];
    if (I < 0.0 || I > instance.losses[i] * (1.0 + 1e-12)) {
      throw ParamError("indemnity must lie in [0, L]");
    }
    const double mean = instance.frequencies[i] * p[i];
    premium += mean * I;
    pmf[i] = truncated_poisson(mean);
    slope[i] = I - instance.losses[i];
  }
  double outcomes = 1.0;
  for (const auto& d : pmf) outcomes *= static_cast<double>(d.size());
  if (outcomes > kMaxOutcomes) {
    throw SizeGuardError("expected_utility: joint occurrence space too large (" +
                         std::to_string(outcomes) + " outcomes)");
  }
  Enumerator e{pmf, slope, utility};
  e.walk(0, 1.0, wealth.w0 - premium - static_cast<double>(x));
  return e.total;
}

InsuranceReport verify_full_insurance(const Instance& instance,
                                      const Selection& selection, Money x,
                                      double w0, const UtilitySpec& utility,
                                      std::span<const double> alphas) {
  InsuranceReport report;
  report.alphas.assign(alphas.begin(), alphas.end());
  WealthModel wealth{w0, std::vector<double>(instance.num_threats())};
  for (double a : alphas) {
    for (std::size_t i = 0; i < instance.num_threats(); ++i) {
      wealth.indemnity[i] = a * instance.losses[i];
    }
    report.values.push_back(
        expected_utility(instance, selection, x, wealth, utility));
  }
  wealth.indemnity = instance.losses;
  const double full = expected_utility(instance, selection, x, wealth, utility);
  const double top = report.values.empty()
                         ? full
                         : *std::max_element(report.values.begin(),
                                             report.values.end());
  // Relative: truncating the Poisson tails leaves noise of order 1e-12 * W.
  const double tol = kSweepTolerance * std::max(1.0, std::fabs(top));
  report.max_at_full = full >= top - tol;
  report.non_decreasing = true;
  for (std::size_t s = 1; s < report.values.size(); ++s) {
    if (report.alphas[s] >= report.alphas[s - 1] &&
        report.values[s] < report.values[s - 1] - tol) {
      report.non_decreasing = false;
    }
  }
  return report;
}

}  // namespace riskknap::oracle
