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

#ifndef RISKKNAP_TESTS_SUPPORT_HPP_
#define RISKKNAP_TESTS_SUPPORT_HPP_

#include <string>

#include "riskknap/io.hpp"
#include "riskknap/model.hpp"

namespace riskknap::testing {

inline std::string data_path(const std::string& name) {
  return std::string(RISKKNAP_TEST_DATA) + "/" + name;
}

inline Instance toy() { return io::load_instance(data_path("toy.json")); }
inline Instance micro() { return io::load_instance(data_path("micro.json")); }

// Optimum of the toy instance, recomputed by exhaustive search.
inline const Selection kToyBest{{1, 2, 3, 5, 7}};
inline constexpr double kToyExpenditure = 1442.2048;

inline bool rel_equal(double a, double b, double eps = 1e-9) {
  return approx_equal(a, b, eps);
}

}  // namespace riskknap::testing

#endif  // RISKKNAP_TESTS_SUPPORT_HPP_
