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

#ifndef RISKKNAP_IO_HPP_
#define RISKKNAP_IO_HPP_

// JSON forms of instances, solutions and solver settings.
//
// Instance:
//   { "losses": [..], "frequencies": [..], "p_init": [..]?, "x_init": int?,
//     "budget_cap": int?,
//     "controls": [ { "id": str, "cost": int, "survival": [..] } ] }
// Solution:
//   { "algorithm": str, "selection": [ids], "x_star": int,
//     "expenditure": num, "residual_risk": num, "seed": int|null,
//     "curve": [[x, expenditure], ..]? }

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "riskknap/genetic.hpp"
#include "riskknap/instgen.hpp"
#include "riskknap/model.hpp"

namespace riskknap::io {

using Json = nlohmann::json;

// Throws ParseError on structural problems. Does not validate values.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& instance);

// Reads, parses and validates. ParseError or ValidationError.
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

Json solution_to_json(const Instance& instance, const Solution& solution,
                      const std::string& algorithm,
                      std::optional<std::uint64_t> seed);
// Selection ids are mapped back through the instance catalog.
Solution solution_from_json(const Instance& instance, const Json& j);

// Keys mirror the GaSettings field names; missing keys keep `base`.
ga::GaSettings ga_settings_from_json(const Json& j,
                                     const ga::GaSettings& base = {});
Json ga_settings_to_json(const ga::GaSettings& settings);

gen::GenParams gen_params_from_json(const Json& j,
                                    const gen::GenParams& base = {});
Json gen_params_to_json(const gen::GenParams& params);

// ParseError when the file is missing or is not JSON.
Json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Serialized with a trailing newline; identical input gives identical bytes.
std::string dump(const Json& j);

}  // namespace riskknap::io

#endif  // RISKKNAP_IO_HPP_
