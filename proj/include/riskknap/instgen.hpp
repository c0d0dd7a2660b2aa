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

#ifndef RISKKNAP_INSTGEN_HPP_
#define RISKKNAP_INSTGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "riskknap/model.hpp"

namespace riskknap::gen {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Ranges default to values in the neighbourhood of the toy example.
struct GenParams {
  std::size_t n_t = 5;
  std::size_t n_k = 8;
  Money gcd = 40;
  Money cost_min = 80;
  Money cost_max = 400;
  std::size_t threats_per_control = 5;
  Range loss_range{500.0, 5000.0};
  Range frequency_range{0.1, 1.0};
  Range survival_range{0.1, 0.95};
  Range p_init_range{0.5, 1.0};
  std::uint64_t seed = 1;
};

std::vector<Violation> validate(const GenParams& params);

struct GenResult {
  Instance instance;
  // cost_gcd(instance) == params.gcd. Retries up to 100 draws otherwise.
  bool gcd_exact = false;
  int attempts = 0;
};

// Deterministic per seed. Throws ParamError on infeasible parameters.
GenResult generate(const GenParams& params);

}  // namespace riskknap::gen

#endif  // RISKKNAP_INSTGEN_HPP_
