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

#ifndef RISKKNAP_DEADLINE_HPP_
#define RISKKNAP_DEADLINE_HPP_

#include <chrono>
#include <optional>

#include "riskknap/errors.hpp"

namespace riskknap {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

inline Deadline deadline_after(std::chrono::milliseconds budget) {
  return Clock::now() + budget;
}

inline void check_deadline(const Deadline& deadline) {
  if (deadline && Clock::now() > *deadline) throw Timeout("time limit exceeded");
}

}  // namespace riskknap

#endif  // RISKKNAP_DEADLINE_HPP_
