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

#include "riskknap/instgen.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "riskknap/rng.hpp"

namespace riskknap::gen {

namespace {

constexpr int kMaxAttempts = 100;

double round_to(double v, double unit) { return std::round(v / unit) * unit; }

void check_range(std::vector<Violation>& out, const char* name, Range r,
                 double lo, double hi) {
  if (!(r.lo <= r.hi)) out.push_back({name, "lo must be <= hi"});
  if (r.lo < lo || r.hi > hi) {
    out.push_back({name, "must lie within [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]"});
  }
}

Instance draw(const GenParams& p, Rng& rng) {
  Instance inst;
  inst.losses.resize(p.n_t);
  inst.frequencies.resize(p.n_t);
  inst.p_init.resize(p.n_t);
  for (std::size_t i = 0; i < p.n_t; ++i) {
    inst.losses[i] =
        std::round(rng.uniform_real(p.loss_range.lo, p.loss_range.hi));
  }
  for (std::size_t i = 0; i < p.n_t; ++i) {
    inst.frequencies[i] = round_to(
        rng.uniform_real(p.frequency_range.lo, p.frequency_range.hi), 1e-3);
  }
  for (std::size_t i = 0; i < p.n_t; ++i) {
    inst.p_init[i] =
        round_to(rng.uniform_real(p.p_init_range.lo, p.p_init_range.hi), 1e-3);
  }
  const Money lo_units = p.cost_min / p.gcd;
  const Money hi_units = p.cost_max / p.gcd;
  std::vector<std::size_t> threats(p.n_t);
  inst.controls.resize(p.n_k);
  for (std::size_t k = 0; k < p.n_k; ++k) {
    Control& c = inst.controls[k];
    c.id = "k" + std::to_string(k + 1);
    c.cost = rng.uniform_int(lo_units, hi_units) * p.gcd;
    c.survival.assign(p.n_t, 1.0);
    // Partial Fisher-Yates picks the affected threats.
    std::iota(threats.begin(), threats.end(), std::size_t{0});
    for (std::size_t s = 0; s < p.threats_per_control; ++s) {
      const auto pick = static_cast<std::size_t>(rng.uniform_int(
          static_cast<std::int64_t>(s), static_cast<std::int64_t>(p.n_t) - 1));
      std::swap(threats[s], threats[pick]);
      c.survival[threats[s]] = round_to(
          rng.uniform_real(p.survival_range.lo, p.survival_range.hi), 1e-3);
    }
  }
  return inst;
}

}  // namespace

std::vector<Violation> validate(const GenParams& p) {
  std::vector<Violation> out;
  if (p.n_t < 1) out.push_back({"threats", "must be >= 1"});
  if (p.n_k < 1) out.push_back({"controls", "must be >= 1"});
  if (p.gcd < 1) {
    out.push_back({"gcd", "must be >= 1"});
    return out;
  }
  if (p.cost_min < p.gcd) out.push_back({"cost_min", "must be >= gcd"});
  if (p.cost_min > p.cost_max) {
    out.push_back({"cost", "cost_min must be <= cost_max"});
  }
  if (p.cost_min % p.gcd != 0 || p.cost_max % p.gcd != 0) {
    out.push_back({"cost", "cost bounds must be multiples of gcd"});
  }
  if (p.threats_per_control < 1 || p.threats_per_control > p.n_t) {
    out.push_back({"threats_per_control", "must lie in [1, threats]"});
  }
  check_range(out, "loss_range", p.loss_range, 0.0, INFINITY);
  check_range(out, "frequency_range", p.frequency_range, 0.0, INFINITY);
  check_range(out, "survival_range", p.survival_range, 0.0, 1.0);
  check_range(out, "p_init_range", p.p_init_range, 0.0, 1.0);
  return out;
}

GenResult generate(const GenParams& params) {
  if (const auto bad = validate(params); !bad.empty()) {
    std::string msg = "invalid generator parameters:";
    for (const auto& v : bad) msg += " " + v.field + " " + v.rule + ";";
    throw ParamError(msg);
  }
  Rng rng(params.seed);
  GenResult result;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    result.instance = draw(params, rng);
    result.attempts = attempt;
    if (cost_gcd(result.instance) == params.gcd) {
      result.gcd_exact = true;
      break;
    }
  }
  return result;
}

}  // namespace riskknap::gen
