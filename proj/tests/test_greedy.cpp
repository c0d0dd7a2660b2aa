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

#include <numeric>

#include "riskknap/cli.hpp"
#include "riskknap/exact_dp.hpp"
#include "riskknap/greedy.hpp"
#include "support.hpp"

namespace riskknap {
namespace {

using testing::micro;
using testing::toy;

TEST(Greedy, ToyMatchesExact) {
  const Solution s = greedy::solve(toy());
  EXPECT_EQ(s.selection, testing::kToyBest);
  EXPECT_EQ(s.x_star, 760);
  EXPECT_TRUE(approx_equal(s.expenditure, testing::kToyExpenditure));
}

TEST(Greedy, MicroKeepsBoth) {
  const Solution s = greedy::solve(micro());
  EXPECT_EQ(s.selection, (Selection{{0, 1}}));
  EXPECT_NEAR(s.expenditure, 900.0, 1e-9);
  EXPECT_FALSE(greedy::find_worst_control(micro(), Selection{{0, 1}}));
}

TEST(Greedy, RemovesUselessControl) {
  Instance m = micro();
  m.controls[1].survival = {1.0, 1.0};
  const auto worst = greedy::find_worst_control(m, Selection{{0, 1}});
  ASSERT_TRUE(worst);
  EXPECT_EQ(*worst, 1u);
  // Dropping a no-op control saves exactly its cost.
  EXPECT_NEAR(expenditure(m, Selection{{0, 1}}, 200) -
                  expenditure(m, Selection{{0}}, 100),
              100.0, 1e-9);
}

TEST(Greedy, TiesGoToLowestIndex) {
  Instance m = micro();
  m.controls.push_back(m.controls[1]);
  m.controls[1].survival = {1.0, 1.0};
  m.controls[2].survival = {1.0, 1.0};
  const auto worst = greedy::find_worst_control(m, Selection{{0, 1, 2}});
  ASSERT_TRUE(worst);
  EXPECT_EQ(*worst, 1u);
}

TEST(Greedy, LastControlGuard) {
  Instance m;
  m.losses = {10.0};
  m.frequencies = {1.0};
  m.p_init = {1.0};
  m.controls = {{"k1", 1000000, {0.5}}};
  EXPECT_FALSE(greedy::find_worst_control(m, Selection{{0}}));
  const Solution faithful = greedy::solve(m);
  EXPECT_EQ(faithful.selection, (Selection{{0}}));
  const Solution open = greedy::solve(m, {.keep_last_control = false});
  EXPECT_TRUE(open.selection.empty());
  EXPECT_NEAR(open.expenditure, 10.0, 1e-12);
}

TEST(Greedy, BudgetCapForcesRemovals) {
  Instance t = toy();
  t.budget_cap = 500;
  const Solution s = greedy::solve(t);
  EXPECT_LE(s.x_star, 500);
  EXPECT_EQ(s.x_star, total_cost(t, s.selection));
}

TEST(Greedy, NeverBeatsExactAndRemovalsStrictlyImprove) {
  const auto batch = cli::small_batch(80, 4242);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Instance& inst = batch[i];
    const double exact = dp::solve(inst).expenditure;
    for (bool keep : {true, false}) {
      const greedy::GreedyConfig cfg{.keep_last_control = keep};
      const Solution s = greedy::solve(inst, cfg);
      EXPECT_GE(s.expenditure, exact - 1e-9 * std::max(1.0, exact)) << i;
      if (inst.budget_cap) continue;
      std::vector<std::size_t> all(inst.num_controls());
      std::iota(all.begin(), all.end(), std::size_t{0});
      Selection cur{all};
      double e = expenditure(inst, cur, total_cost(inst, cur));
      std::size_t steps = 0;
      while (const auto k = greedy::find_worst_control(inst, cur, cfg)) {
        cur.members.erase(
            std::find(cur.members.begin(), cur.members.end(), *k));
        const double next = expenditure(inst, cur, total_cost(inst, cur));
        EXPECT_TRUE(definitely_less(next, e));
        e = next;
        ++steps;
      }
      EXPECT_LE(steps, inst.num_controls());
      EXPECT_EQ(cur, s.selection);
    }
  }
}

}  // namespace
}  // namespace riskknap
