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

#ifndef RISKKNAP_KERNELS_HPP_
#define RISKKNAP_KERNELS_HPP_

// Data-parallel inner loops. Every kernel has a serial reference version
// (kernels_serial.cpp) and an OpenMP version (kernels_omp.cpp). Row
// evaluation agrees bit for bit; enumeration agrees on the chosen mask
// (products are formed in a different order per shard).

#include <cstddef>
#include <cstdint>
#include <span>

#include "riskknap/model.hpp"

namespace riskknap::kernels {

enum class Exec { kSerial, kParallel };

// genes holds `rows` consecutive 0/1 rows of num_controls() entries each.
// Writes total cost and expenditure (x = total cost) per row.
void evaluate_rows_serial(const Instance& instance,
                          std::span<const std::uint8_t> genes,
                          std::span<Money> cost, std::span<double> expenditure);
void evaluate_rows_parallel(const Instance& instance,
                            std::span<const std::uint8_t> genes,
                            std::span<Money> cost,
                            std::span<double> expenditure);

inline void evaluate_rows(Exec exec, const Instance& instance,
                          std::span<const std::uint8_t> genes,
                          std::span<Money> cost,
                          std::span<double> expenditure) {
  if (exec == Exec::kParallel) {
    evaluate_rows_parallel(instance, genes, cost, expenditure);
  } else {
    evaluate_rows_serial(instance, genes, cost, expenditure);
  }
}

struct EnumBest {
  std::uint64_t mask = 0;  // bit k set = control k selected
  Money cost = 0;
  double expenditure = 0.0;
  bool found = false;  // false when no selection fits the budget cap
};

// True when a should be preferred over b: lower expenditure, then lower
// cost, then lexicographically smaller sorted index list.
bool better(const EnumBest& a, const EnumBest& b);

// Exhaustive minimum of expenditure over the 2^n_k selections, taking
// x = total cost, skipping selections above the budget cap. Only for
// n_k <= 63; callers enforce tighter guards.
EnumBest enumerate_serial(const Instance& instance);
EnumBest enumerate_parallel(const Instance& instance);

inline EnumBest enumerate(Exec exec, const Instance& instance) {
  return exec == Exec::kParallel ? enumerate_parallel(instance)
                                 : enumerate_serial(instance);
}

// Scans masks whose top `prefix_bits` bits equal `prefix`. Shared by both
// enumerate versions.
EnumBest enumerate_shard(const Instance& instance, unsigned prefix_bits,
                         std::uint64_t prefix);

}  // namespace riskknap::kernels

#endif  // RISKKNAP_KERNELS_HPP_
