// Copyright 2026 The Authors.
//
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

#include "malleable/oracle.h"

#include <vector>

#include "gtest/gtest.h"
#include "malleable/capacity.h"
#include "test_util.h"

namespace malleable {
namespace {

using ::malleable::testing::MakeTask;
using ::malleable::testing::PairInstance;
using ::malleable::testing::SmallAdversarial;

std::vector<int> All(const Instance& instance) {
  return AllIndices(instance.num_tasks());
}

TEST(FlowFeasibleTest, FeasiblePair) {
  const Instance instance = PairInstance();
  const FlowResult result = FlowFeasible(instance, All(instance), 2);
  EXPECT_TRUE(result.feasible);
  EXPECT_EQ(result.flow, 6);
  EXPECT_TRUE(CheckAllocation(instance, result.matrix).empty());
  EXPECT_EQ(result.matrix.Total(0), 4);
  EXPECT_EQ(result.matrix.Total(1), 2);
}

TEST(FlowFeasibleTest, InfeasiblePair) {
  const Instance instance{
      2, {MakeTask("a", 1, 4, 2, 2), MakeTask("b", 1, 2, 2, 1)}};
  const FlowResult result = FlowFeasible(instance, All(instance), 2);
  EXPECT_FALSE(result.feasible);
  EXPECT_EQ(result.flow, 4);
  EXPECT_EQ(result.demand, 6);
}

TEST(FlowFeasibleTest, EmptyIsFeasible) {
  const Instance instance{2, {}};
  EXPECT_TRUE(FlowFeasible(instance, {}, 2).feasible);
}

TEST(FlowFeasibleTest, WindowRestrictsSlots) {
  const Instance instance = PairInstance();
  FlowOptions options;
  options.window = {3, 4};
  EXPECT_EQ(FlowFeasible(instance, All(instance), 2, options).flow, 4);
  options.window = {5, 4};
  EXPECT_EQ(FlowFeasible(instance, All(instance), 2, options).flow, 0);
}

TEST(FlowFeasibleTest, DeadlineOverrides) {
  const Instance instance = PairInstance();
  FlowOptions options;
  options.deadlines = {2, 2};
  EXPECT_FALSE(FlowFeasible(instance, All(instance), 2, options).feasible);
  options.deadlines = {4, 4};
  const FlowResult moved = FlowFeasible(instance, All(instance), 2, options);
  EXPECT_TRUE(moved.feasible);
  EXPECT_TRUE(
      CheckAllocation(instance, moved.matrix, options.deadlines).empty());
}

TEST(ExhaustiveWelfareTest, AdversarialFamily) {
  absl::StatusOr<WelfareOptimum> opt = ExhaustiveWelfare(SmallAdversarial());
  ASSERT_TRUE(opt.ok());
  EXPECT_EQ(opt->welfare, MakeRational(41, 5));
  EXPECT_EQ(opt->subset.size(), 4u);
}

TEST(ExhaustiveWelfareTest, AllInfeasibleGivesZero) {
  const Instance instance{
      2, {MakeTask("a", 3, 5, 2, 2), MakeTask("b", 4, 9, 1, 8)}};
  EXPECT_EQ(ExhaustiveWelfare(instance)->welfare, Rational(0));
}

TEST(ExhaustiveWelfareTest, SingleFeasibleTask) {
  const Instance instance{2, {MakeTask("a", MakeRational(7, 4), 2, 2, 1)}};
  EXPECT_EQ(ExhaustiveWelfare(instance)->welfare, MakeRational(7, 4));
}

TEST(ExhaustiveWelfareTest, RefusesLargeInstances) {
  const Instance instance = SmallAdversarial();
  EXPECT_EQ(ExhaustiveWelfare(instance, 5).status().code(),
            absl::StatusCode::kResourceExhausted);
}

TEST(ScanMachineMinTest, MirrorsMinimization) {
  EXPECT_EQ(*ScanMachineMin(Instance{1, {MakeTask("a", 1, 4, 2, 2)}}), 2);
  EXPECT_EQ(*ScanMachineMin(SmallAdversarial()), 3);
  EXPECT_EQ(*ScanMachineMin(Instance{1, {}}), 0);
  EXPECT_EQ(
      ScanMachineMin(Instance{1, {MakeTask("a", 1, 5, 2, 2)}}).status().code(),
      absl::StatusCode::kFailedPrecondition);
}

TEST(ScanMaxWeightedTest, SingleTaskExamples) {
  EXPECT_EQ(*ScanMaxWeighted(Instance{2, {MakeTask("a", 2, 4, 1, 2)}},
                             WeightedMode::kLateness),
            Rational(2));
  const Instance early{2, {MakeTask("a", 1, 2, 3, 2)}};
  EXPECT_EQ(*ScanMaxWeighted(early, WeightedMode::kLateness), Rational(-2));
  EXPECT_EQ(*ScanMaxWeighted(early, WeightedMode::kCompletion), Rational(1));
}

}  // namespace
}  // namespace malleable
