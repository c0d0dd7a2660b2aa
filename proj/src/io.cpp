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

#include "riskknap/io.hpp"

#include <fstream>
#include <sstream>

namespace riskknap::io {

namespace {

template <typename T>
T get(const Json& j, const char* key, const char* where) {
  if (!j.contains(key)) {
    throw ParseError(std::string(where) + ": missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(where) + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, const char* where) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return get<T>(j, key, where);
}

Json range_to_json(gen::Range r) { return Json::array({r.lo, r.hi}); }

gen::Range range_from_json(const Json& j, const char* key, gen::Range base) {
  if (!j.contains(key)) return base;
  const auto v = get<std::vector<double>>(j, key, "gen params");
  if (v.size() != 2) {
    throw ParseError(std::string("gen params.") + key + ": expected [lo, hi]");
  }
  return {v[0], v[1]};
}

}  // namespace

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  Instance inst;
  inst.losses = get<std::vector<double>>(j, "losses", "instance");
  inst.frequencies = get<std::vector<double>>(j, "frequencies", "instance");
  inst.p_init = get_or<std::vector<double>>(
      j, "p_init", std::vector<double>(inst.losses.size(), 1.0), "instance");
  inst.x_init = get_or<Money>(j, "x_init", 0, "instance");
  if (j.contains("budget_cap") && !j.at("budget_cap").is_null()) {
    inst.budget_cap = get<Money>(j, "budget_cap", "instance");
  }
  const Json& controls = j.contains("controls") ? j.at("controls") : Json();
  if (!controls.is_array()) throw ParseError("instance: 'controls' must be an array");
  for (std::size_t k = 0; k < controls.size(); ++k) {
    const Json& c = controls[k];
    if (!c.is_object()) throw ParseError("instance: control entries must be objects");
    Control ctl;
    ctl.id = get_or<std::string>(c, "id", "k" + std::to_string(k + 1), "control");
    if (c.contains("cost") && c.at("cost").is_number_float()) {
      throw ParseError("control " + ctl.id + ": cost must be an integer");
    }
    ctl.cost = get<Money>(c, "cost", "control");
    ctl.survival = get<std::vector<double>>(c, "survival", "control");
    inst.controls.push_back(std::move(ctl));
  }
  return inst;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["losses"] = inst.losses;
  j["frequencies"] = inst.frequencies;
  j["p_init"] = inst.p_init;
  j["x_init"] = inst.x_init;
  if (inst.budget_cap) j["budget_cap"] = *inst.budget_cap;
  Json controls = Json::array();
  for (const auto& c : inst.controls) {
    controls.push_back({{"id", c.id}, {"cost", c.cost}, {"survival", c.survival}});
  }
  j["controls"] = std::move(controls);
  return j;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

Instance load_instance(const std::string& path) {
  Instance inst = instance_from_json(read_json(path));
  require_valid(inst);
  return inst;
}

void save_instance(const Instance& instance, const std::string& path) {
  write_text(path, dump(instance_to_json(instance)));
}

Json solution_to_json(const Instance& instance, const Solution& solution,
                      const std::string& algorithm,
                      std::optional<std::uint64_t> seed) {
  Json j;
  j["algorithm"] = algorithm;
  j["selection"] = selection_ids(instance, solution.selection);
  j["x_star"] = solution.x_star;
  j["expenditure"] = solution.expenditure;
  j["residual_risk"] = solution.residual_risk;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  if (!solution.curve.empty()) {
    Json curve = Json::array();
    for (const auto& p : solution.curve) {
      curve.push_back(Json::array({p.investment, p.best_expenditure}));
    }
    j["curve"] = std::move(curve);
  }
  return j;
}

Solution solution_from_json(const Instance& instance, const Json& j) {
  Solution s;
  for (const auto& id : get<std::vector<std::string>>(j, "selection", "solution")) {
    std::size_t k = 0;
    while (k < instance.num_controls() && instance.controls[k].id != id) ++k;
    if (k == instance.num_controls()) {
      throw ParseError("solution: unknown control id '" + id + "'");
    }
    s.selection.members.push_back(k);
  }
  s.selection = make_selection(std::move(s.selection.members));
  s.x_star = get<Money>(j, "x_star", "solution");
  s.expenditure = get<double>(j, "expenditure", "solution");
  s.residual_risk = get<double>(j, "residual_risk", "solution");
  if (j.contains("curve")) {
    for (const auto& p : j.at("curve")) {
      s.curve.push_back({p.at(0).get<Money>(), p.at(1).get<double>()});
    }
  }
  return s;
}

ga::GaSettings ga_settings_from_json(const Json& j, const ga::GaSettings& base) {
  if (!j.is_object()) throw ParseError("GA settings: expected a JSON object");
  ga::GaSettings s = base;
  const char* w = "ga settings";
  s.population_size = get_or(j, "population_size", s.population_size, w);
  s.limit = get_or(j, "limit", s.limit, w);
  s.two_point_pct = get_or(j, "two_point_pct", s.two_point_pct, w);
  s.elitism_pct = get_or(j, "elitism_pct", s.elitism_pct, w);
  s.mutation_bits = get_or(j, "mutation_bits", s.mutation_bits, w);
  s.mix_good_good = get_or(j, "mix_good_good", s.mix_good_good, w);
  s.mix_good_bad = get_or(j, "mix_good_bad", s.mix_good_bad, w);
  s.mix_bad_bad = get_or(j, "mix_bad_bad", s.mix_bad_bad, w);
  s.good_fraction_pct = get_or(j, "good_fraction_pct", s.good_fraction_pct, w);
  s.seed = get_or(j, "seed", s.seed, w);
  s.parallel_eval = get_or(j, "parallel_eval", s.parallel_eval, w);
  return s;
}

Json ga_settings_to_json(const ga::GaSettings& s) {
  return {{"population_size", s.population_size},
          {"limit", s.limit},
          {"two_point_pct", s.two_point_pct},
          {"elitism_pct", s.elitism_pct},
          {"mutation_bits", s.mutation_bits},
          {"mix_good_good", s.mix_good_good},
          {"mix_good_bad", s.mix_good_bad},
          {"mix_bad_bad", s.mix_bad_bad},
          {"good_fraction_pct", s.good_fraction_pct},
          {"seed", s.seed},
          {"parallel_eval", s.parallel_eval}};
}

gen::GenParams gen_params_from_json(const Json& j, const gen::GenParams& base) {
  if (!j.is_object()) throw ParseError("gen params: expected a JSON object");
  gen::GenParams p = base;
  const char* w = "gen params";
  p.n_t = get_or(j, "n_t", p.n_t, w);
  p.n_k = get_or(j, "n_k", p.n_k, w);
  p.gcd = get_or(j, "gcd", p.gcd, w);
  p.cost_min = get_or(j, "cost_min", p.cost_min, w);
  p.cost_max = get_or(j, "cost_max", p.cost_max, w);
  p.threats_per_control =
      get_or(j, "threats_per_control", p.threats_per_control, w);
  p.loss_range = range_from_json(j, "loss_range", p.loss_range);
  p.frequency_range = range_from_json(j, "frequency_range", p.frequency_range);
  p.survival_range = range_from_json(j, "survival_range", p.survival_range);
  p.p_init_range = range_from_json(j, "p_init_range", p.p_init_range);
  p.seed = get_or(j, "seed", p.seed, w);
  return p;
}

Json gen_params_to_json(const gen::GenParams& p) {
  return {{"n_t", p.n_t},
          {"n_k", p.n_k},
          {"gcd", p.gcd},
          {"cost_min", p.cost_min},
          {"cost_max", p.cost_max},
          {"threats_per_control", p.threats_per_control},
          {"loss_range", range_to_json(p.loss_range)},
          {"frequency_range", range_to_json(p.frequency_range)},
          {"survival_range", range_to_json(p.survival_range)},
          {"p_init_range", range_to_json(p.p_init_range)},
          {"seed", p.seed}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace riskknap::io
