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

#include "riskknap/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "riskknap/exact_dp.hpp"
#include "riskknap/greedy.hpp"
#include "riskknap/io.hpp"
#include "riskknap/oracle.hpp"
#include "riskknap/rng.hpp"

namespace riskknap::bench {

namespace {

using Json = nlohmann::json;

constexpr std::size_t kReferenceRuns = 10;
constexpr std::size_t kReferenceQuorum = 7;

struct Cell {
  std::string label;
  gen::GenParams params;
  ga::GaSettings ga;
  std::uint64_t seed = 0;
};

Money round_up(Money v, Money g) { return (v + g - 1) / g * g; }
Money round_down(Money v, Money g) { return v / g * g; }

Cell make_cell(const BatterySpec& spec, const Json& value, bool affect_all,
               std::size_t index) {
  Cell cell;
  cell.params = spec.base;
  cell.ga = spec.ga;
  cell.seed = Rng::derive(spec.seed, index);
  cell.label = value.dump();
  try {
    switch (spec.dim) {
      case SweepDim::kThreats:
        cell.params.n_t = value.get<std::size_t>();
        break;
      case SweepDim::kControls:
        cell.params.n_k = value.get<std::size_t>();
        break;
      case SweepDim::kGcd: {
        const Money g = value.get<Money>();
        if (g < 1) throw ParamError("gcd sweep values must be >= 1");
        cell.params.gcd = g;
        cell.params.cost_min = std::max(g, round_up(spec.base.cost_min, g));
        cell.params.cost_max = round_down(spec.base.cost_max, g);
        break;
      }
      case SweepDim::kCostRange: {
        const auto r = value.get<std::vector<Money>>();
        if (r.size() != 2) throw ParamError("cost_range values are [min, max]");
        cell.params.cost_min = r[0];
        cell.params.cost_max = r[1];
        cell.label = std::to_string(r[0]) + ":" + std::to_string(r[1]);
        break;
      }
      case SweepDim::kAffectedThreats:
        cell.params.threats_per_control = value.get<std::size_t>();
        break;
      case SweepDim::kGaSettings:
        cell.ga = io::ga_settings_from_json(value, spec.ga);
        cell.label = std::to_string(cell.ga.population_size) + "x" +
                     std::to_string(cell.ga.limit);
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParamError("bad sweep value " + value.dump() + ": " + e.what());
  }
  if (affect_all) cell.params.threats_per_control = cell.params.n_t;
  cell.params.seed = cell.seed;
  return cell;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

bool needs_csv_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_field(const std::string& s) {
  if (!needs_csv_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_string(SweepDim dim) {
  switch (dim) {
    case SweepDim::kThreats: return "threats";
    case SweepDim::kControls: return "controls";
    case SweepDim::kGcd: return "gcd";
    case SweepDim::kCostRange: return "cost_range";
    case SweepDim::kAffectedThreats: return "affected_threats";
    case SweepDim::kGaSettings: return "ga_settings";
  }
  return "?";
}

SweepDim parse_sweep_dim(const std::string& text) {
  for (SweepDim d : {SweepDim::kThreats, SweepDim::kControls, SweepDim::kGcd,
                     SweepDim::kCostRange, SweepDim::kAffectedThreats,
                     SweepDim::kGaSettings}) {
    if (to_string(d) == text) return d;
  }
  throw ParamError("unknown sweep dimension '" + text + "'");
}

BatterySpec parse_battery_spec(const Json& j) {
  if (!j.is_object()) throw ParseError("battery spec: expected a JSON object");
  BatterySpec spec;
  try {
    spec.dim = parse_sweep_dim(j.at("sweep").get<std::string>());
    const Json& values = j.at("values");
    if (!values.is_array() || values.empty()) {
      throw ParamError("battery spec: 'values' must be a non-empty array");
    }
    spec.values.assign(values.begin(), values.end());
    if (j.contains("base")) spec.base = io::gen_params_from_json(j.at("base"));
    if (j.contains("algorithms")) {
      spec.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    }
    spec.trials = j.value("trials", spec.trials);
    const auto limit = j.value("time_limit_ms", std::int64_t{60000});
    if (limit <= 0) throw ParamError("battery spec: time_limit_ms must be > 0");
    spec.time_limit = std::chrono::milliseconds(limit);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("ga")) spec.ga = io::ga_settings_from_json(j.at("ga"));
    spec.workers = j.value("workers", spec.workers);
    spec.mask_timing = j.value("mask_timing", spec.mask_timing);
    if (j.value("affect_all", false)) {
      // Sentinel resolved per cell: every control touches every threat.
      spec.base.threats_per_control = 0;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("battery spec: ") + e.what());
  }
  if (spec.trials < 1) throw ParamError("battery spec: trials must be >= 1");
  if (spec.base.threats_per_control == 0 &&
      spec.dim == SweepDim::kAffectedThreats) {
    throw ParamError("battery spec: affect_all conflicts with an affected_threats sweep");
  }
  if (spec.algorithms.empty()) {
    throw ParamError("battery spec: no algorithms listed");
  }
  for (const auto& a : spec.algorithms) {
    static const char* known[] = {"dp", "proj", "greedy", "greedy_open", "ga",
                                  "brute"};
    if (std::find(std::begin(known), std::end(known), a) == std::end(known)) {
      throw ParamError("battery spec: unknown algorithm '" + a + "'");
    }
  }
  return spec;
}

Solution run_algorithm(const std::string& algorithm, const Instance& instance,
                       const ga::GaSettings& ga, const Deadline& deadline) {
  if (algorithm == "dp" || algorithm == "proj") {
    dp::DpConfig config;
    config.dominance = algorithm == "dp" ? dp::Dominance::kPareto
                                         : dp::Dominance::kProjection;
    config.deadline = deadline;
    return dp::solve(instance, config);
  }
  if (algorithm == "greedy") return greedy::solve(instance);
  if (algorithm == "greedy_open") {
    return greedy::solve(instance, {.keep_last_control = false});
  }
  if (algorithm == "ga") return ga::solve(instance, ga, nullptr, deadline);
  if (algorithm == "brute") {
    return oracle::brute_force(instance, kernels::Exec::kSerial);
  }
  throw ParamError("unknown algorithm '" + algorithm + "'");
}

std::optional<double> reference_optimum(const Instance& instance,
                                        std::chrono::milliseconds limit,
                                        std::uint64_t seed) {
  try {
    return run_algorithm("proj", instance, {}, deadline_after(limit))
        .expenditure;
  } catch (const Timeout&) {
  }
  std::vector<double> found;
  for (std::size_t r = 0; r < kReferenceRuns; ++r) {
    ga::GaSettings high;
    high.seed = Rng::derive(seed, 100 + r);
    try {
      found.push_back(ga::solve(instance, high, nullptr, deadline_after(limit))
                          .expenditure);
    } catch (const Timeout&) {
    }
  }
  std::optional<double> winner;
  std::size_t votes = 0;
  for (double v : found) {
    const auto n = static_cast<std::size_t>(
        std::count_if(found.begin(), found.end(),
                      [v](double o) { return approx_equal(o, v); }));
    if (n > votes) {
      votes = n;
      winner = v;
    }
  }
  if (votes >= kReferenceQuorum) return winner;
  return std::nullopt;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BatteryReport run_battery(const BatterySpec& spec) {
  const bool affect_all = spec.base.threats_per_control == 0;
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < spec.values.size(); ++v) {
    cells.push_back(make_cell(spec, spec.values[v], affect_all, v));
  }
  for (const auto& c : cells) {
    if (const auto bad = gen::validate(c.params); !bad.empty()) {
      throw ParamError("sweep value " + c.label + ": " + bad.front().field +
                       " " + bad.front().rule);
    }
  }

  std::vector<std::vector<RunRow>> rows_per_cell(cells.size());
  std::vector<std::vector<CellResult>> results_per_cell(cells.size());

  const auto n_cells = static_cast<std::ptrdiff_t>(cells.size());
  const int workers = static_cast<int>(std::max<std::size_t>(1, spec.workers));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::ptrdiff_t ci = 0; ci < n_cells; ++ci) {
    const Cell& cell = cells[ci];
    const Instance instance = gen::generate(cell.params).instance;
    const auto reference =
        reference_optimum(instance, spec.time_limit, cell.seed);
    for (const auto& algo : spec.algorithms) {
      CellResult result;
      result.algorithm = algo;
      result.sweep_value = cell.label;
      result.trials = spec.trials;
      std::vector<double> times;
      std::size_t matches = 0;
      std::size_t finished = 0;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        RunRow row;
        row.sweep_value = cell.label;
        row.algorithm = algo;
        row.trial = t;
        ga::GaSettings settings = cell.ga;
        row.seed = algo == "ga" ? Rng::derive(cell.seed, t + 1) : cell.seed;
        settings.seed = row.seed;
        try {
          const auto start = Clock::now();
          const Solution s = run_algorithm(algo, instance, settings,
                                           deadline_after(spec.time_limit));
          const std::chrono::duration<double, std::milli> took =
              Clock::now() - start;
          row.wall_ms = took.count();
          row.expenditure = s.expenditure;
          row.x_star = s.x_star;
          if (reference) {
            row.exact_match = approx_equal(s.expenditure, *reference);
            matches += *row.exact_match ? 1 : 0;
          }
          times.push_back(*row.wall_ms);
          if (!result.expenditure) result.expenditure = s.expenditure;
          ++finished;
        } catch (const Timeout&) {
        }
        rows_per_cell[ci].push_back(row);
      }
      if (!times.empty()) result.median_wall_ms = median(times);
      if (reference && finished > 0) result.exact_match = matches == finished;
      if (algo == "ga" && reference) result.successes = matches;
      results_per_cell[ci].push_back(result);
    }
  }

  BatteryReport report;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    for (auto& r : rows_per_cell[ci]) report.rows.push_back(std::move(r));
    for (auto& r : results_per_cell[ci]) report.cells.push_back(std::move(r));
  }
  report.csv = format_csv(spec, report.rows);
  return report;
}

std::string format_csv(const BatterySpec& spec, std::span<const RunRow> rows) {
  std::ostringstream os;
  os << "sweep_dim,sweep_value,algorithm,trial,seed,wall_ms,expenditure,"
        "x_star,exact_match\n";
  for (const auto& r : rows) {
    os << to_string(spec.dim) << ',' << csv_field(r.sweep_value) << ','
       << r.algorithm << ',' << r.trial << ',' << r.seed << ',';
    if (!r.wall_ms) {
      os << "timeout";
    } else if (spec.mask_timing) {
      os << '-';
    } else {
      os << fmt("%.3f", *r.wall_ms);
    }
    os << ',';
    if (r.expenditure) os << fmt("%.6f", *r.expenditure);
    os << ',';
    if (r.x_star) os << *r.x_star;
    os << ',';
    if (r.exact_match) os << (*r.exact_match ? "true" : "false");
    os << '\n';
  }
  return os.str();
}

std::string format_cell_summary(const CellResult& c) {
  std::ostringstream os;
  os << "value=" << c.sweep_value << " algo=" << c.algorithm << " median_ms=";
  os << (c.median_wall_ms ? fmt("%.3f", *c.median_wall_ms) : "timeout");
  os << " expenditure=";
  os << (c.expenditure ? fmt("%.4f", *c.expenditure) : "-");
  os << " exact=";
  os << (c.exact_match ? (*c.exact_match ? "yes" : "no") : "?");
  if (c.successes) os << " success=" << *c.successes << "/" << c.trials;
  return os.str();
}

std::vector<CurvePoint> expenditure_curve(const Instance& instance) {
  dp::DpConfig config;
  config.record_curve = true;
  return dp::solve(instance, config).curve;
}

std::string format_curve(std::span<const CurvePoint> curve) {
  std::ostringstream os;
  os << "x,expenditure\n";
  for (const auto& p : curve) {
    os << p.investment << ',' << fmt("%.6f", p.best_expenditure) << '\n';
  }
  return os.str();
}

}  // namespace riskknap::bench
