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

#include <gtest/gtest.h>

#include <omp.h>

#include "riskknap/cli.hpp"
#include "riskknap/instgen.hpp"
#include "riskknap/kernels.hpp"
#include "riskknap/rng.hpp"
#include "support.hpp"

namespace riskknap {
namespace {

using kernels::Exec;

Instance generated(std::size_t n_t, std::size_t n_k, std::uint64_t seed) {
  gen::GenParams p;
  p.n_t = n_t;
  p.n_k = n_k;
  p.threats_per_control = std::min<std::size_t>(3, n_t);
  p.seed = seed;
  return gen::generate(p).instance;
}

// Run the parallel kernels with several threads even on one core.
class Kernels : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }
  int saved_ = 1;
};

TEST_F(Kernels, RowEvaluationBitwiseEqual) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generated(12, 30, seed);
    const std::size_t rows = 257;
    Rng rng(seed);
    std::vector<std::uint8_t> genes(rows * inst.num_controls());
    for (auto& g : genes) g = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
    std::vector<Money> c1(rows), c2(rows);
    std::vector<double> e1(rows), e2(rows);
    kernels::evaluate_rows_serial(inst, genes, c1, e1);
    kernels::evaluate_rows_parallel(inst, genes, c2, e2);
    EXPECT_EQ(c1, c2);
    EXPECT_EQ(e1, e2);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::size_t> members;
      for (std::size_t k = 0; k < inst.num_controls(); ++k) {
        if (genes[r * inst.num_controls() + k]) members.push_back(k);
      }
      const Selection s{members};
      EXPECT_EQ(c1[r], total_cost(inst, s));
      EXPECT_TRUE(approx_equal(e1[r], expenditure(inst, s, c1[r])));
    }
  }
}

TEST_F(Kernels, EnumerationAgrees) {
  auto batch = cli::small_batch(40, 77);
  batch.push_back(testing::toy());
  batch.push_back(generated(4, 16, 9));
  for (const Instance& inst : batch) {
    const auto a = kernels::enumerate_serial(inst);
    const auto b = kernels::enumerate_parallel(inst);
    EXPECT_TRUE(a.found);
    EXPECT_EQ(a.mask, b.mask);
    EXPECT_EQ(a.cost, b.cost);
    EXPECT_TRUE(approx_equal(a.expenditure, b.expenditure));
    if (inst.budget_cap) EXPECT_LE(a.cost, *inst.budget_cap);
  }
}

TEST_F(Kernels, ShardsCoverTheWholeSpace) {
  const Instance inst = generated(5, 10, 3);
  const auto whole = kernels::enumerate_serial(inst);
  kernels::EnumBest best;
  for (std::uint64_t prefix = 0; prefix < 8; ++prefix) {
    const auto part = kernels::enumerate_shard(inst, 3, prefix);
    if (part.found && (!best.found || kernels::better(part, best))) best = part;
  }
  EXPECT_EQ(best.mask, whole.mask);
}

TEST_F(Kernels, TieBreakPrefersCheaperThenLexicographic) {
  kernels::EnumBest a{0b011, 5, 10.0, true};
  kernels::EnumBest b{0b100, 6, 10.0, true};
  EXPECT_TRUE(kernels::better(a, b));
  kernels::EnumBest c{0b101, 5, 10.0, true};
  // {0,1} < {0,2}.
  EXPECT_TRUE(kernels::better(a, c));
  EXPECT_FALSE(kernels::better(c, a));
  kernels::EnumBest d{0b111, 9, 9.0, true};
  EXPECT_TRUE(kernels::better(d, a));
}

}  // namespace
}  // namespace riskknap
