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

#include "malleable/ldf.h"

#include <algorithm>
#include <random>
#include <vector>

#include "absl/strings/match.h"
#include "gtest/gtest.h"
#include "malleable/capacity.h"
#include "malleable/generators.h"
#include "malleable/oracle.h"
#include "test_util.h"

namespace malleable {
namespace {

using ::malleable::testing::MakeTask;
using ::malleable::testing::PairInstance;
using ::malleable::testing::SmallParams;

std::vector<int> RowOf(const AllocationMatrix& m, int task) {
  std::span<const int> row = m.Row(task);
  return {row.begin(), row.end()};
}

// j holds y_j = [0, 2] with k_j = 2 on C = 2; i is the second task.
struct Blocked {
  Instance instance;
  AllocationMatrix initial;
};

Blocked BlockedSlotTwo(const Task& i) {
  Blocked b{{2, {MakeTask("j", 1, 2, 2, 2), i}}, AllocationMatrix(2, 2, 2)};
  b.initial.Set(0, 2, 2);
  return b;
}

TEST(FullyUtilizeTest, FillsFromDeadlineDown) {
  const Instance instance{2, {MakeTask("i", 1, 3, 2, 2)}};
  Scheduler s(instance);
  ASSERT_OK(s.FullyUtilize(0));
  EXPECT_EQ(RowOf(s.matrix(), 0), (std::vector<int>{1, 2}));
}

TEST(FullyUtilizeTest, SaturatesWhenDemandIsKTimesD) {
  const Instance instance{3, {MakeTask("i", 1, 6, 3, 2)}};
  Scheduler s(instance);
  ASSERT_OK(s.FullyUtilize(0));
  EXPECT_EQ(RowOf(s.matrix(), 0), (std::vector<int>{2, 2, 2}));
}

TEST(FullyUtilizeTest, LeavesDemandWhenSlotsAreFull) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  ASSERT_OK(s.FullyUtilize(1));
  EXPECT_EQ(RowOf(s.matrix(), 1), (std::vector<int>{1, 0}));
}

TEST(FullyUtilizeTest, RequiresEmptyRow) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  EXPECT_EQ(s.FullyUtilize(0).code(), absl::StatusCode::kFailedPrecondition);
}

TEST(RoutineTest, MovesOneUnitEarlier) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  ASSERT_OK(s.Routine(1, 2, 1, true, false));
  EXPECT_EQ(RowOf(s.matrix(), 0), (std::vector<int>{1, 1}));
  EXPECT_EQ(s.matrix().Spare(2), 1);
}

TEST(RoutineTest, NoChangeWhenSpareSuffices) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  ASSERT_OK(s.Routine(1, 1, 1, true, false));
  EXPECT_EQ(s.matrix(), b.initial);
}

TEST(RoutineTest, PrefixGuardExitsImmediately) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  ASSERT_OK(s.Routine(1, 2, 1, true, true));
  EXPECT_EQ(s.matrix(), b.initial);
}

TEST(RoutineTest, ThresholdBlocksWithoutEta1) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  s.set_threshold(1);
  ASSERT_OK(s.Routine(1, 2, 1, false, false));
  EXPECT_EQ(s.matrix(), b.initial);
  ASSERT_OK(s.Routine(1, 2, 1, true, false));
  EXPECT_EQ(RowOf(s.matrix(), 0), (std::vector<int>{1, 1}));
}

TEST(RoutineTest, RejectsTargetAboveHeadroom) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  EXPECT_EQ(s.Routine(1, 2, 2, true, false).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(s.Routine(1, 2, -1, true, false).code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(FullyAllocateTest, FreesCapacityThroughRoutine) {
  Blocked b = BlockedSlotTwo(MakeTask("i", 1, 2, 2, 1));
  Scheduler s(b.instance, b.initial);
  ASSERT_OK(s.FullyUtilize(1));
  ASSERT_OK(s.FullyAllocate(1));
  EXPECT_EQ(RowOf(s.matrix(), 0), (std::vector<int>{1, 1}));
  EXPECT_EQ(RowOf(s.matrix(), 1), (std::vector<int>{1, 1}));
}

TEST(FullyAllocateTest, NoChangeWithoutOutstandingDemand) {
  const Instance instance{2, {MakeTask("i", 1, 3, 2, 2)}};
  Scheduler s(instance);
  ASSERT_OK(s.FullyUtilize(0));
  const AllocationMatrix before = s.matrix();
  ASSERT_OK(s.FullyAllocate(0));
  EXPECT_EQ(s.matrix(), before);
}

TEST(FullyAllocateTest, ReportsInfeasibleResidual) {
  const Instance instance{
      2, {MakeTask("a", 1, 4, 2, 2), MakeTask("b", 1, 2, 2, 1)}};
  Scheduler s(instance);
  ASSERT_OK(s.AllocateB(0));
  const absl::Status status = s.AllocateB(1);
  EXPECT_EQ(status.code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_TRUE(absl::StartsWith(status.message(), "infeasible residual"));
}

TEST(AllocateRlmTest, NoChangeWhenAlreadyRightPacked) {
  const Instance instance{2, {MakeTask("i", 1, 3, 2, 2)}};
  Scheduler s(instance);
  ASSERT_OK(s.FullyUtilize(0));
  const AllocationMatrix before = s.matrix();
  ASSERT_OK(s.AllocateRlm(0, true));
  EXPECT_EQ(s.matrix(), before);
}

TEST(AllocateRlmTest, GuardedCallsLeaveMatrixUnchanged) {
  const Instance instance{
      2, {MakeTask("a", 1, 2, 3, 1), MakeTask("i", 1, 3, 3, 2)}};
  AllocationMatrix initial(2, 3, 2);
  initial.Set(0, 2, 1);
  initial.Set(0, 3, 1);
  for (int t = 1; t <= 3; ++t) initial.Set(1, t, 1);
  Scheduler s(instance, initial);
  ASSERT_OK(s.AllocateRlm(1, true));
  EXPECT_EQ(s.matrix(), initial);
}

TEST(AllocateRlmTest, ReachesSuffixOptimality) {
  // a: D=1, d=2, k=1 at slot 2; i: D=3, d=3, k=2.
  const Instance instance{
      2, {MakeTask("a", 1, 1, 2, 1), MakeTask("i", 1, 3, 3, 2)}};
  AllocationMatrix initial(2, 3, 2);
  initial.Set(0, 2, 1);
  Scheduler s(instance, initial);
  ASSERT_OK(s.AllocateB(1));
  const AllocationMatrix& m = s.matrix();
  for (int cut = 0; cut <= 3; ++cut) {
    if (cut > 0 && m.Spare(cut) == 0) continue;
    EXPECT_EQ(m.Allocated(1, cut + 1, 3),
              std::min<int64_t>(3, 2 * std::max(0, 3 - cut)))
        << "cut " << cut;
  }
}

TEST(AllocateBTest, ExactFit) {
  const Instance instance{2, {MakeTask("i", 1, 4, 2, 2)}};
  Scheduler s(instance);
  ASSERT_OK(s.AllocateB(0));
  EXPECT_EQ(RowOf(s.matrix(), 0), (std::vector<int>{2, 2}));
}

TEST(AllocateATest, MatchesFullyUtilizeOnEmptyMachines) {
  const Instance instance{3, {MakeTask("i", 1, 5, 4, 2)}};
  Scheduler a(instance);
  Scheduler u(instance);
  ASSERT_OK(a.AllocateA(0));
  ASSERT_OK(u.FullyUtilize(0));
  EXPECT_EQ(a.matrix(), u.matrix());
}

TEST(AllocateATest, TightAdmissionUsesEveryCountedSlot) {
  // Spare capacity [1, 1, 0]; k = 1 so exactly two slots count.
  const Instance instance{
      1, {MakeTask("x", 1, 1, 3, 1), MakeTask("i", 1, 2, 3, 1)}};
  AllocationMatrix initial(2, 3, 1);
  initial.Set(0, 3, 1);
  Scheduler s(instance, initial);
  ASSERT_OK(s.AllocateA(1));
  EXPECT_EQ(RowOf(s.matrix(), 1), (std::vector<int>{1, 1, 0}));
}

TEST(LdfScheduleTest, FeasiblePair) {
  const Instance instance = PairInstance();
  absl::StatusOr<LdfOutcome> out = LdfSchedule(instance);
  ASSERT_TRUE(out.ok());
  ASSERT_TRUE(out->feasible);
  int64_t suffix = 0;
  int64_t total = 0;
  for (int i = 0; i < 2; ++i) {
    suffix += out->matrix.Allocated(i, 3, 4);
    total += out->matrix.Total(i);
  }
  EXPECT_EQ(suffix, 4);
  EXPECT_EQ(total, 6);
  EXPECT_TRUE(CheckAllocation(instance, out->matrix).empty());
}

TEST(LdfScheduleTest, EmptyIsFeasible) {
  const Instance instance{2, {}};
  absl::StatusOr<LdfOutcome> out = LdfSchedule(instance);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->feasible);
  EXPECT_EQ(out->matrix.num_tasks(), 0);
}

TEST(LdfScheduleTest, InfeasiblePairReportsTaskAndIndex) {
  const Instance instance{
      2, {MakeTask("a", 1, 4, 2, 2), MakeTask("b", 1, 2, 2, 1)}};
  for (bool precheck : {true, false}) {
    LdfOptions options;
    options.precheck = precheck;
    absl::StatusOr<LdfOutcome> out = LdfSchedule(instance, options);
    ASSERT_TRUE(out.ok());
    EXPECT_FALSE(out->feasible);
    EXPECT_EQ(out->failed_task, 1);
    EXPECT_EQ(out->report.first_violation, 0);
    EXPECT_EQ(out->matrix.num_tasks(), 0);
  }
}

TEST(LdfScheduleTest, SubsetLeavesOtherRowsEmpty) {
  const Instance instance = PairInstance();
  const std::vector<int> only_b = {1};
  absl::StatusOr<LdfOutcome> out = LdfSchedule(instance, only_b);
  ASSERT_TRUE(out.ok());
  ASSERT_TRUE(out->feasible);
  EXPECT_EQ(out->matrix.Total(0), 0);
  EXPECT_EQ(out->matrix.Total(1), 2);
}

TEST(LdfScheduleTest, DeadlineOverrides) {
  const Instance instance = PairInstance();
  LdfOptions options;
  options.deadlines = {2, 2};
  absl::StatusOr<LdfOutcome> out = LdfSchedule(instance, options);
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->feasible);
  options.deadlines = {1};
  EXPECT_FALSE(LdfSchedule(instance, options).ok());
}

TEST(TraceTest, EventJson) {
  const Instance instance = PairInstance();
  EXPECT_EQ(
      TraceEventToJson({TraceEvent::Op::kTransfer, 1, 2, 1, 1}, instance),
      R"({"op":"transfer","task":"b","from_slot":2,"to_slot":1,"amount":1})");
}

// Three-way agreement, suffix sums, staircase, monotone load and
// conservation on random small instances.
TEST(LdfPropertyTest, StructuralInvariants) {
  for (uint64_t seed = 0; seed < 400; ++seed) {
    const Instance instance =
        *GenerateRandom(SmallParams(1 + seed % 6, 1 + seed % 4), seed * 7919);
    const int n = instance.num_tasks();
    absl::StatusOr<CapacityReport> report = InstanceBoundaryCondition(instance);
    ASSERT_TRUE(report.ok());
    const FlowResult flow =
        FlowFeasible(instance, AllIndices(n), instance.machines);

    std::vector<int64_t> totals(n, 0);
    AllocationMatrix previous(n, instance.Horizon(), instance.machines);
    bool conserved = true;
    bool monotone = true;
    bool staircase = true;
    LdfOptions options;
    options.precheck = false;
    options.trace = [&](const TraceEvent& e, const AllocationMatrix& m) {
      if (e.op == TraceEvent::Op::kUtilize || e.op == TraceEvent::Op::kGrant) {
        totals[e.task] += e.amount;
      }
      conserved = conserved && m.Total(e.task) == totals[e.task] &&
                  CheckAllocation(instance, m).empty();
    };
    options.after_task = [&](int task, const AllocationMatrix& m) {
      for (int t = 1; t <= m.horizon(); ++t) {
        monotone = monotone && m.Load(t) >= previous.Load(t);
      }
      for (int t = 2; t <= instance.tasks[task].deadline; ++t) {
        staircase = staircase && m.Spare(t - 1) >= m.Spare(t);
      }
      previous = m;
    };
    absl::StatusOr<LdfOutcome> out = LdfSchedule(instance, options);
    ASSERT_TRUE(out.ok()) << out.status();
    EXPECT_EQ(out->feasible, report->feasible) << "seed " << seed;
    EXPECT_EQ(out->feasible, flow.feasible) << "seed " << seed;
    EXPECT_TRUE(conserved) << "seed " << seed;
    EXPECT_TRUE(monotone) << "seed " << seed;
    EXPECT_TRUE(staircase) << "seed " << seed;
    if (!out->feasible) continue;

    std::vector<int> taus = TaskDeadlines(instance);
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    const int levels = static_cast<int>(taus.size());
    for (int j = 1; j <= levels; ++j) {
      const int from = (j == levels ? 0 : taus[levels - j - 1]) + 1;
      int64_t suffix = 0;
      for (int i = 0; i < n; ++i) {
        suffix += out->matrix.Allocated(i, from, taus.back());
      }
      EXPECT_EQ(suffix, report->lambda_capped[j]) << "seed " << seed;
    }
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(out->matrix.Total(i), instance.tasks[i].demand);
    }
  }
}

TEST(LdfPropertyTest, FeasibilityIgnoresOrderWithinDeadlineGroup) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Instance instance = *GenerateRandom(SmallParams(6, 1 + seed % 3), seed);
    LdfOptions options;
    options.precheck = false;
    const bool base = LdfSchedule(instance, options)->feasible;
    std::mt19937_64 rng(seed);
    std::shuffle(instance.tasks.begin(), instance.tasks.end(), rng);
    EXPECT_EQ(LdfSchedule(instance, options)->feasible, base)
        << "seed " << seed;
  }
}

}  // namespace
}  // namespace malleable
