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

#include <algorithm>
#include <numeric>

#include "riskknap/instgen.hpp"
#include "riskknap/model.hpp"
#include "riskknap/rng.hpp"
#include "support.hpp"

namespace riskknap {
namespace {

using testing::kToyBest;
using testing::micro;
using testing::toy;

TEST(Model, TotalCost) {
  const Instance t = toy();
  EXPECT_EQ(total_cost(t, kToyBest), 760);
  EXPECT_EQ(total_cost(t, Selection{}), 0);
  EXPECT_EQ(total_cost(micro(), Selection{{0, 1}}), 200);
}

TEST(Model, TotalCostRejectsBadIndices) {
  const Instance t = toy();
  EXPECT_THROW(total_cost(t, Selection{{8}}), InvalidSelection);
  EXPECT_THROW(total_cost(t, Selection{{2, 2}}), InvalidSelection);
}

TEST(Model, CombinedSurvival) {
  const Instance t = toy();
  EXPECT_EQ(combined_survival(t, Selection{}), t.p_init);
  const auto p = combined_survival(t, kToyBest);
  EXPECT_NEAR(p[0], 0.6 * 0.9 * 0.5 * 0.8 * 0.8 * 0.6, 1e-15);
  EXPECT_NEAR(p[0], 0.10368, 1e-12);

  Instance z = micro();
  z.controls[0].survival = {0.0, 0.0};
  for (double v : combined_survival(z, Selection{{0}})) EXPECT_EQ(v, 0.0);
}

TEST(Model, Risk) {
  const Instance t = toy();
  EXPECT_NEAR(risk(t, Selection{}), 5786.0, 1e-9);
  EXPECT_NEAR(risk(t, kToyBest), 682.2048, 1e-9);
  Instance quiet = t;
  std::fill(quiet.frequencies.begin(), quiet.frequencies.end(), 0.0);
  EXPECT_EQ(risk(quiet, kToyBest), 0.0);
}

TEST(Model, Expenditure) {
  const Instance t = toy();
  EXPECT_TRUE(testing::rel_equal(expenditure(t, kToyBest, 760), 1442.2048));
  EXPECT_NEAR(expenditure(t, Selection{}, 0), 5786.0, 1e-9);
  EXPECT_NEAR(expenditure(micro(), Selection{{0, 1}}, 200), 900.0, 1e-12);
  EXPECT_THROW(expenditure(t, kToyBest, 720), CostExceedsInvestment);
  EXPECT_THROW(expenditure(t, Selection{}, -1), CostExceedsInvestment);
}

TEST(Model, ExpenditureIncludesInitialInvestment) {
  Instance m = micro();
  m.x_init = 50;
  EXPECT_NEAR(expenditure(m, Selection{{0, 1}}, 200), 950.0, 1e-12);
}

TEST(Model, MinPremium) {
  EXPECT_NEAR(min_premium(toy()), 136.3821408, 1e-6);
  EXPECT_NEAR(min_premium(micro()), 700.0, 1e-12);
  Instance z = micro();
  z.controls[0].survival = {0.0, 0.0};
  EXPECT_EQ(min_premium(z), 0.0);
}

TEST(Model, CostGcd) {
  EXPECT_EQ(cost_gcd(toy()), 40);
  EXPECT_EQ(cost_gcd(micro()), 100);
  Instance one = micro();
  one.controls.resize(1);
  one.controls[0].cost = 7;
  EXPECT_EQ(cost_gcd(one), 7);
  one.controls.clear();
  EXPECT_THROW(cost_gcd(one), ParamError);
}

TEST(Model, ValidateAcceptsToy) { EXPECT_TRUE(validate(toy()).empty()); }

TEST(Model, ValidateNamesBadProbability) {
  Instance t = toy();
  t.controls[2].survival[3] = 1.3;
  const auto v = validate(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "controls[2].survival[3]");
}

TEST(Model, ValidateFlagsLengthMismatch) {
  Instance t = toy();
  t.controls[0].survival.pop_back();
  const auto v = validate(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "controls[0].survival");
  EXPECT_THROW(require_valid(t), ValidationError);
}

TEST(Model, ValidateFlagsOtherInvariants) {
  Instance t = toy();
  t.losses[0] = -1;
  t.frequencies[1] = -0.5;
  t.p_init[2] = 2.0;
  t.controls[0].cost = 0;
  t.x_init = -3;
  EXPECT_EQ(validate(t).size(), 5u);
}

TEST(Model, Tolerance) {
  EXPECT_TRUE(approx_equal(1.0, 1.0 + 5e-10));
  EXPECT_FALSE(approx_equal(1.0, 1.0 + 5e-9));
  EXPECT_TRUE(approx_equal(1e6, 1e6 + 5e-4));
  EXPECT_TRUE(definitely_less(1.0, 1.1));
  EXPECT_FALSE(definitely_less(1.0, 1.0 + 1e-12));
}

// Properties over random instances and selections.
class ModelProperties : public ::testing::TestWithParam<int> {};

TEST_P(ModelProperties, Hold) {
  gen::GenParams p;
  p.n_t = 6;
  p.n_k = 10;
  p.threats_per_control = 3;
  p.seed = static_cast<std::uint64_t>(GetParam());
  const Instance inst = gen::generate(p).instance;
  Rng rng(Rng::derive(99, GetParam()));
  const double pmin = min_premium(inst);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < inst.num_controls(); ++k) {
      if (rng.uniform_int(0, 1)) members.push_back(k);
    }
    const Selection s{members};
    const double r = risk(inst, s);
    // Adding any control never raises risk.
    for (std::size_t k = 0; k < inst.num_controls(); ++k) {
      if (s.contains(k)) continue;
      auto more = members;
      more.push_back(k);
      EXPECT_LE(risk(inst, make_selection(more)), r);
    }
    // Permuting the selection leaves the product unchanged.
    auto shuffled = members;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto a = combined_survival(inst, s);
    const auto b = combined_survival(inst, Selection{shuffled});
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_TRUE(approx_equal(a[i], b[i], 1e-12));
    }
    const Money c = total_cost(inst, s);
    EXPECT_TRUE(approx_equal(expenditure(inst, s, c) - static_cast<double>(c) -
                                 static_cast<double>(inst.x_init),
                             r, 1e-12));
    EXPECT_LE(pmin, r + 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ModelProperties, ::testing::Range(1, 11));

TEST(Model, MakeSolutionInvariant) {
  const Instance t = toy();
  const Solution s = make_solution(t, Selection{{7, 1, 2, 3, 5}}, 760);
  EXPECT_EQ(s.selection, kToyBest);
  EXPECT_TRUE(approx_equal(s.expenditure, s.x_star + s.residual_risk));
}

}  // namespace
}  // namespace riskknap
