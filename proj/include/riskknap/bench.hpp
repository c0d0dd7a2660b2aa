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

#ifndef RISKKNAP_BENCH_HPP_
#define RISKKNAP_BENCH_HPP_

// Time/accuracy batteries across solvers and generator parameters.
//
// Battery spec (JSON):
//   { "sweep": "threats"|"controls"|"gcd"|"cost_range"|"affected_threats"
//              |"ga_settings",
//     "values": [..],            // numbers; [min,max] for cost_range;
//                                // GA settings objects for ga_settings
//     "base": { gen params },    // see io::gen_params_from_json
//     "algorithms": ["dp","proj","greedy","greedy_open","ga","brute"],
//     "trials": 1, "time_limit_ms": 60000, "seed": 1,
//     "ga": { GA settings }?, "workers": 1, "mask_timing": false }
//
// CSV columns:
//   sweep_dim,sweep_value,algorithm,trial,seed,wall_ms,expenditure,x_star,
//   exact_match

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "riskknap/genetic.hpp"
#include "riskknap/instgen.hpp"
#include "riskknap/model.hpp"

namespace riskknap::bench {

enum class SweepDim {
  kThreats,
  kControls,
  kGcd,
  kCostRange,
  kAffectedThreats,
  kGaSettings
};

std::string to_string(SweepDim dim);
SweepDim parse_sweep_dim(const std::string& text);

struct BatterySpec {
  SweepDim dim = SweepDim::kControls;
  std::vector<nlohmann::json> values;
  gen::GenParams base;
  std::vector<std::string> algorithms{"dp", "proj", "greedy", "ga"};
  std::size_t trials = 1;
  std::chrono::milliseconds time_limit{60000};
  std::uint64_t seed = 1;
  ga::GaSettings ga;
  std::size_t workers = 1;
  // Write "-" instead of wall-clock numbers so the CSV is reproducible.
  bool mask_timing = false;
};

// Throws ParamError / ParseError.
BatterySpec parse_battery_spec(const nlohmann::json& j);

struct RunRow {
  std::string sweep_value;
  std::string algorithm;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> wall_ms;  // empty on timeout
  std::optional<double> expenditure;
  std::optional<Money> x_star;
  std::optional<bool> exact_match;
};

struct CellResult {
  std::string algorithm;
  std::string sweep_value;
  std::optional<double> median_wall_ms;  // empty when every trial timed out
  std::optional<double> expenditure;     // first finished trial
  std::optional<bool> exact_match;       // all finished trials matched
  std::optional<std::size_t> successes;  // GA only: trials matching
  std::size_t trials = 0;
};

struct BatteryReport {
  std::vector<CellResult> cells;
  std::vector<RunRow> rows;
  std::string csv;
};

// Runs a single algorithm by name. Throws Timeout past the deadline.
Solution run_algorithm(const std::string& algorithm, const Instance& instance,
                       const ga::GaSettings& ga, const Deadline& deadline);

// Reference optimum for accuracy columns: projection DP within the limit,
// otherwise a >= 7 of 10 majority over high-setting GA runs.
std::optional<double> reference_optimum(const Instance& instance,
                                        std::chrono::milliseconds limit,
                                        std::uint64_t seed);

BatteryReport run_battery(const BatterySpec& spec);

std::string format_csv(const BatterySpec& spec, std::span<const RunRow> rows);
std::string format_cell_summary(const CellResult& cell);

// Best expenditure per grid investment from the projection DP.
std::vector<CurvePoint> expenditure_curve(const Instance& instance);
// Two columns "x expenditure", gnuplot friendly.
std::string format_curve(std::span<const CurvePoint> curve);

double median(std::vector<double> values);

}  // namespace riskknap::bench

#endif  // RISKKNAP_BENCH_HPP_
