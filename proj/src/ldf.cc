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
#include <utility>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "nlohmann/json.hpp"

namespace malleable {
namespace {

std::vector<int> DeadlinesOrDefault(const Instance& instance,
                                    std::vector<int> deadlines) {
  return deadlines.empty() ? TaskDeadlines(instance) : std::move(deadlines);
}

int MaxOf(const std::vector<int>& values) {
  int result = 0;
  for (int v : values) result = std::max(result, v);
  return result;
}

constexpr absl::string_view kInfeasibleResidual = "infeasible residual";

}  // namespace

absl::string_view OpName(TraceEvent::Op op) {
  switch (op) {
    case TraceEvent::Op::kUtilize:
      return "utilize";
    case TraceEvent::Op::kTransfer:
      return "transfer";
    case TraceEvent::Op::kGrant:
      return "grant";
    case TraceEvent::Op::kShift:
      return "shift";
  }
  return "unknown";
}

std::string TraceEventToJson(const TraceEvent& event,
                             const Instance& instance) {
  nlohmann::ordered_json record;
  record["op"] = OpName(event.op);
  record["task"] = instance.tasks[event.task].id;
  record["from_slot"] = event.from_slot;
  record["to_slot"] = event.to_slot;
  record["amount"] = event.amount;
  return record.dump();
}

Scheduler::Scheduler(const Instance& instance, std::vector<int> deadlines)
    : instance_(&instance),
      deadlines_(DeadlinesOrDefault(instance, std::move(deadlines))),
      matrix_(instance.num_tasks(), MaxOf(deadlines_), instance.machines) {}

Scheduler::Scheduler(const Instance& instance, AllocationMatrix initial,
                     std::vector<int> deadlines)
    : instance_(&instance),
      deadlines_(DeadlinesOrDefault(instance, std::move(deadlines))),
      matrix_(std::move(initial)) {}

void Scheduler::Change(TraceEvent::Op op, int task, int from_slot, int to_slot,
                       int amount) {
  if (from_slot > 0) matrix_.Add(task, from_slot, -amount);
  if (to_slot > 0) matrix_.Add(task, to_slot, amount);
  if (trace_) trace_(TraceEvent{op, task, from_slot, to_slot, amount}, matrix_);
}

int Scheduler::LatestSpareBefore(int slot) const {
  for (int t = slot - 1; t >= 1; --t) {
    if (matrix_.Spare(t) > 0) return t;
  }
  return 0;
}

absl::Status Scheduler::FullyUtilize(int task) {
  if (matrix_.Total(task) != 0) {
    return absl::FailedPreconditionError(
        absl::StrCat("FullyUtilize needs an empty row for task ",
                     instance_->tasks[task].id));
  }
  const Task& job = instance_->tasks[task];
  int64_t remaining = job.demand;
  for (int t = deadlines_[task]; t >= 1 && remaining > 0; --t) {
    const int64_t amount =
        std::min<int64_t>({job.parallelism, remaining, matrix_.Spare(t)});
    if (amount > 0) {
      Change(TraceEvent::Op::kUtilize, task, 0, t, static_cast<int>(amount));
      remaining -= amount;
    }
  }
  return absl::OkStatus();
}

absl::Status Scheduler::Routine(int task, int slot, int64_t target, bool eta1,
                                bool eta2) {
  const int headroom =
      instance_->tasks[task].parallelism - matrix_.at(task, slot);
  if (target < 0 || target > headroom) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Routine target ", target, " outside [0, ", headroom, "]"));
  }
  while (matrix_.Spare(slot) < target) {
    const int earlier = LatestSpareBefore(slot);
    if (earlier == 0) break;
    if (!eta1 && earlier <= threshold_) break;
    if (eta2 &&
        matrix_.Allocated(task, 1, earlier - 1) <= matrix_.Spare(slot)) {
      break;
    }
    int mover = -1;
    for (int j = 0; j < matrix_.num_tasks(); ++j) {
      if (j != task && matrix_.at(j, slot) > matrix_.at(j, earlier)) {
        mover = j;
        break;
      }
    }
    if (mover < 0) {
      return absl::InternalError(absl::StrCat(
          "Routine found no task to move from slot ", slot, " to slot ",
          earlier, " while serving task ", instance_->tasks[task].id));
    }
    Change(TraceEvent::Op::kTransfer, mover, slot, earlier, 1);
  }
  return absl::OkStatus();
}

absl::Status Scheduler::FullyAllocate(int task) {
  const Task& job = instance_->tasks[task];
  int64_t outstanding = job.demand - matrix_.Total(task);
  for (int t = deadlines_[task]; outstanding > 0; --t) {
    if (t == 0) {
      return absl::FailedPreconditionError(
          absl::StrCat(kInfeasibleResidual, ": task ", job.id, " is short ",
                       outstanding, " machine-slots"));
    }
    const int64_t wanted =
        std::min<int64_t>(job.parallelism - matrix_.at(task, t), outstanding);
    if (wanted <= 0) continue;
    if (absl::Status status = Routine(task, t, wanted, true, false);
        !status.ok()) {
      return status;
    }
    if (matrix_.Spare(t) > wanted) {
      return absl::InternalError(absl::StrCat(
          "FullyAllocate: slot ", t, " has ", matrix_.Spare(t),
          " spare machines but task ", job.id, " can take only ", wanted));
    }
    const int64_t grant = matrix_.Spare(t);
    if (grant > 0) {
      Change(TraceEvent::Op::kGrant, task, 0, t, static_cast<int>(grant));
      outstanding -= grant;
    }
  }
  return absl::OkStatus();
}

absl::Status Scheduler::AllocateRlm(int task, bool eta1) {
  const Task& job = instance_->tasks[task];
  for (int t = deadlines_[task]; t >= 1; --t) {
    const int64_t earlier_total = matrix_.Allocated(task, 1, t - 1);
    if (earlier_total == 0) break;
    const int64_t wanted =
        std::min<int64_t>(job.parallelism - matrix_.at(task, t), earlier_total);
    if (wanted <= 0) continue;
    if (absl::Status status = Routine(task, t, wanted, eta1, true);
        !status.ok()) {
      return status;
    }
    if (matrix_.Spare(t) > wanted) {
      return absl::InternalError(absl::StrCat(
          "AllocateRlm: slot ", t, " has ", matrix_.Spare(t),
          " spare machines but task ", job.id, " can take only ", wanted));
    }
    int64_t moved = matrix_.Spare(t);
    for (int s = 1; s < t && moved > 0; ++s) {
      const int take =
          static_cast<int>(std::min<int64_t>(matrix_.at(task, s), moved));
      if (take == 0) continue;
      Change(TraceEvent::Op::kShift, task, s, t, take);
      moved -= take;
    }
  }
  return absl::OkStatus();
}

absl::Status Scheduler::AllocateB(int task) {
  if (absl::Status status = FullyUtilize(task); !status.ok()) return status;
  if (absl::Status status = FullyAllocate(task); !status.ok()) return status;
  return AllocateRlm(task, true);
}

absl::Status Scheduler::AllocateA(int task) {
  if (absl::Status status = FullyUtilize(task); !status.ok()) return status;
  if (absl::Status status = AllocateRlm(task, false); !status.ok()) {
    return status;
  }
  const Task& job = instance_->tasks[task];
  if (matrix_.Total(task) != job.demand) {
    return absl::InternalError(absl::StrCat(
        "AllocateA left task ", job.id, " with ", matrix_.Total(task), " of ",
        job.demand, " machine-slots after admission"));
  }
  return absl::OkStatus();
}

std::vector<int> LdfOrder(std::span<const int> deadlines,
                          std::span<const int> subset) {
  std::vector<int> order(subset.begin(), subset.end());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (deadlines[a] != deadlines[b]) return deadlines[a] > deadlines[b];
    return a < b;
  });
  return order;
}

absl::StatusOr<LdfOutcome> LdfSchedule(const Instance& instance,
                                       std::span<const int> subset,
                                       const LdfOptions& options) {
  const std::vector<int> deadlines =
      options.deadlines.empty() ? TaskDeadlines(instance) : options.deadlines;
  if (static_cast<int>(deadlines.size()) != instance.num_tasks()) {
    return absl::InvalidArgumentError("deadline override count mismatch");
  }
  for (int i : subset) {
    if (i < 0 || i >= instance.num_tasks()) {
      return absl::OutOfRangeError(absl::StrCat("task index ", i));
    }
    if (deadlines[i] < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "task ", instance.tasks[i].id, " has deadline ", deadlines[i]));
    }
  }

  std::vector<int> taus = deadlines;
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  const std::vector<int> order = LdfOrder(deadlines, subset);

  LdfOutcome outcome;
  {
    absl::StatusOr<CapacityReport> report = BoundaryCondition(
        taus, SubsetWorkloads(instance, subset, deadlines), instance.machines);
    if (!report.ok()) return report.status();
    outcome.report = *std::move(report);
  }

  // The first prefix of the processing order that violates the boundary
  // condition names the task that cannot be added.
  auto first_failing = [&]() -> std::optional<int> {
    std::vector<int64_t> lambda(taus.size() + 1, 0);
    int64_t total = 0;
    for (int i : order) {
      const std::vector<int64_t> own =
          JobLambda(taus, {instance.tasks[i].demand, deadlines[i],
                           instance.tasks[i].parallelism});
      for (size_t m = 0; m < own.size(); ++m) lambda[m] += own[m];
      total += instance.tasks[i].demand;
      if (!AssessBoundary(taus, total, lambda, instance.machines).feasible) {
        return i;
      }
    }
    return std::nullopt;
  };

  if (options.precheck && !outcome.report.feasible) {
    outcome.feasible = false;
    outcome.failed_task = first_failing();
    return outcome;
  }

  Scheduler scheduler(instance, deadlines);
  scheduler.set_trace(options.trace);
  for (int i : order) {
    absl::Status status = scheduler.AllocateB(i);
    if (absl::IsFailedPrecondition(status) &&
        absl::StartsWith(status.message(), kInfeasibleResidual)) {
      outcome.feasible = false;
      outcome.failed_task = i;
      return outcome;
    }
    if (!status.ok()) return status;
    if (options.after_task) options.after_task(i, scheduler.matrix());
  }
  outcome.feasible = true;
  outcome.matrix = std::move(scheduler).TakeMatrix();
  return outcome;
}

absl::StatusOr<LdfOutcome> LdfSchedule(const Instance& instance,
                                       const LdfOptions& options) {
  const std::vector<int> all = AllIndices(instance.num_tasks());
  return LdfSchedule(instance, all, options);
}

}  // namespace malleable
