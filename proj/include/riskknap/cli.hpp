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

#ifndef RISKKNAP_CLI_HPP_
#define RISKKNAP_CLI_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riskknap/model.hpp"

namespace riskknap::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kInvalidInput = 2,
  kGuardTripped = 3,
  kVerifyFailed = 4,
  kInternal = 5,
};

// The exact engines compared by `verify`. Tests swap in broken ones.
struct SolverSet {
  std::function<Solution(const Instance&)> brute;
  std::function<Solution(const Instance&)> pareto;
  std::function<Solution(const Instance&)> projection;
};

SolverSet default_solvers();

struct AgreementRow {
  std::string label;
  std::optional<double> brute;  // empty when over the brute-force size cap
  double pareto = 0.0;
  double projection = 0.0;
  bool agree = false;
};

AgreementRow check_agreement(const std::string& label,
                             const Instance& instance,
                             const SolverSet& solvers);

// Small seeded instances (n_t <= 6, n_k <= 12) for the oracle battery.
// Every fourth instance carries a budget cap.
std::vector<Instance> small_batch(std::size_t count, std::uint64_t seed);

// Initial wealth large enough that every truncated outcome stays positive.
double safe_wealth(const Instance& instance, Money x);

// Seed from --seed, then RISKKNAP_SEED, then 1.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, const SolverSet* solvers = nullptr);

}  // namespace riskknap::cli

#endif  // RISKKNAP_CLI_HPP_
