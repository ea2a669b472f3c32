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

#include "malleable/capacity.h"

#include <algorithm>
#include <vector>

#include "gtest/gtest.h"
#include "malleable/generators.h"
#include "malleable/oracle.h"
#include "test_util.h"

namespace malleable {
namespace {

using ::malleable::testing::PairInstance;
using ::malleable::testing::SmallParams;

const std::vector<int> kTaus = {2, 4};
const std::vector<Workload> kFeasiblePair = {{4, 4, 2}, {2, 2, 1}};
const std::vector<Workload> kInfeasiblePair = {{4, 2, 2}, {2, 2, 1}};

std::vector<int> Grid(const Instance& instance) {
  std::vector<int> taus = TaskDeadlines(instance);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  return taus;
}

TEST(LambdaUnboundedTest, PairExamples) {
  EXPECT_EQ(*LambdaUnbounded(kTaus, kFeasiblePair, 0), 0);
  EXPECT_EQ(*LambdaUnbounded(kTaus, kFeasiblePair, 1), 4);
  EXPECT_EQ(*LambdaUnbounded(kTaus, kFeasiblePair, 2), 6);
}

TEST(LambdaUnboundedTest, EmptySetIsZero) {
  for (int m = 0; m <= 2; ++m) EXPECT_EQ(*LambdaUnbounded(kTaus, {}, m), 0);
}

TEST(LambdaUnboundedTest, RejectsIndexPastGrid) {
  EXPECT_EQ(LambdaUnbounded(kTaus, kFeasiblePair, 3).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(LambdaUnboundedTest, RejectsDeadlineOffGrid) {
  const std::vector<Workload> off = {{1, 3, 1}};
  EXPECT_EQ(LambdaUnbounded(kTaus, off, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(LambdaCappedTest, PairExamples) {
  absl::StatusOr<CapacityReport> feasible =
      LambdaCapped(kTaus, kFeasiblePair, 2);
  ASSERT_TRUE(feasible.ok());
  EXPECT_EQ(feasible->lambda_capped, (std::vector<int64_t>{0, 4, 6}));

  const std::vector<int> one = {2};
  absl::StatusOr<CapacityReport> capped = LambdaCapped(one, kInfeasiblePair, 2);
  ASSERT_TRUE(capped.ok());
  EXPECT_EQ(capped->lambda, (std::vector<int64_t>{0, 6}));
  EXPECT_EQ(capped->lambda_capped, (std::vector<int64_t>{0, 4}));
}

TEST(LambdaCappedTest, RejectsZeroMachines) {
  EXPECT_FALSE(LambdaCapped(kTaus, kFeasiblePair, 0).ok());
}

TEST(LambdaCappedTest, CapNeverBindsWithAbundantMachines) {
  // C * d >= sum k_j d_j.
  absl::StatusOr<CapacityReport> report = LambdaCapped(kTaus, kFeasiblePair, 3);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->lambda_capped, report->lambda);
}

TEST(BoundaryConditionTest, FeasiblePair) {
  absl::StatusOr<CapacityReport> report =
      BoundaryCondition(kTaus, kFeasiblePair, 2);
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(report->feasible);
  EXPECT_EQ(report->residual, (std::vector<int64_t>{0, 2, 6}));
  EXPECT_FALSE(report->first_violation.has_value());
}

TEST(BoundaryConditionTest, InfeasiblePairViolatesAtZero) {
  const std::vector<int> one = {2};
  absl::StatusOr<CapacityReport> report =
      BoundaryCondition(one, kInfeasiblePair, 2);
  ASSERT_TRUE(report.ok());
  EXPECT_FALSE(report->feasible);
  EXPECT_EQ(report->residual[0], 2);
  EXPECT_EQ(report->first_violation, 0);
}

TEST(BoundaryConditionTest, EmptySetIsFeasible) {
  absl::StatusOr<CapacityReport> report = BoundaryCondition(kTaus, {}, 1);
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(report->feasible);
  absl::StatusOr<CapacityReport> none = BoundaryCondition({}, {}, 1);
  ASSERT_TRUE(none.ok());
  EXPECT_TRUE(none->feasible);
}

TEST(InstanceBoundaryConditionTest, OverridesMoveDeadlines) {
  const Instance instance = PairInstance();
  EXPECT_TRUE(InstanceBoundaryCondition(instance)->feasible);
  // a squeezed into [1, 2] alongside b.
  EXPECT_FALSE(InstanceBoundaryCondition(instance, {{"a", 2}})->feasible);
  // b given a later deadline stays feasible.
  EXPECT_TRUE(InstanceBoundaryCondition(instance, {{"b", 3}})->feasible);
}

TEST(InstanceBoundaryConditionTest, SubsetUsesFullGrid) {
  const Instance instance = PairInstance();
  const std::vector<int> only_b = {1};
  absl::StatusOr<CapacityReport> report =
      InstanceBoundaryCondition(instance, only_b);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->lambda_capped, (std::vector<int64_t>{0, 0, 2}));
}

TEST(JobLambdaTest, SumsToSetLambda) {
  std::vector<int64_t> sum(3, 0);
  for (const Workload& job : kFeasiblePair) {
    const std::vector<int64_t> own = JobLambda(kTaus, job);
    for (int m = 0; m < 3; ++m) sum[m] += own[m];
  }
  EXPECT_EQ(sum, LambdaCapped(kTaus, kFeasiblePair, 100)->lambda);
}

// Report invariants and the suffix-window flow equality on random sets.
TEST(CapacityPropertyTest, InvariantsAndSuffixFlow) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const Instance instance =
        *GenerateRandom(SmallParams(1 + seed % 6, 1 + seed % 4), seed);
    const std::vector<int> taus = Grid(instance);
    absl::StatusOr<CapacityReport> report = InstanceBoundaryCondition(instance);
    ASSERT_TRUE(report.ok());
    const int levels = static_cast<int>(taus.size());
    ASSERT_EQ(report->lambda_capped.size(), static_cast<size_t>(levels + 1));
    EXPECT_EQ(report->lambda[0], 0);
    EXPECT_EQ(report->lambda_capped[0], 0);
    for (int m = 1; m <= levels; ++m) {
      const int width =
          taus[levels - m] - (m == levels ? 0 : taus[levels - m - 1]);
      EXPECT_GE(report->lambda[m], report->lambda[m - 1]);
      EXPECT_GE(report->lambda_capped[m], report->lambda_capped[m - 1]);
      EXPECT_LE(report->lambda_capped[m], report->lambda[m]);
      EXPECT_LE(report->lambda_capped[m] - report->lambda_capped[m - 1],
                instance.machines * width);
    }
    const std::vector<int> all = AllIndices(instance.num_tasks());
    for (int m = 0; m <= levels; ++m) {
      FlowOptions window;
      window.window = {(m == levels ? 0 : taus[levels - m - 1]) + 1,
                       taus.back()};
      EXPECT_EQ(FlowFeasible(instance, all, instance.machines, window).flow,
                report->lambda_capped[m])
          << "seed " << seed << " m " << m;
    }
  }
}

TEST(CapacityPropertyTest, MonotoneInMachinesAndTasks) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Instance instance =
        *GenerateRandom(SmallParams(2 + seed % 5, 1 + seed % 3), seed);
    const bool feasible = InstanceBoundaryCondition(instance)->feasible;
    Instance more = instance;
    ++more.machines;
    if (feasible) EXPECT_TRUE(InstanceBoundaryCondition(more)->feasible);
    std::vector<int> prefix;
    bool prefix_feasible = true;
    for (int i = 0; i < instance.num_tasks(); ++i) {
      prefix.push_back(i);
      const bool now = InstanceBoundaryCondition(instance, prefix)->feasible;
      if (!prefix_feasible) EXPECT_FALSE(now) << "seed " << seed;
      prefix_feasible = now;
    }
  }
}

}  // namespace
}  // namespace malleable
