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

#include "malleable/objectives.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "malleable/capacity.h"
#include "malleable/ldf.h"

namespace malleable {
namespace {

std::vector<int> Grid(std::vector<int> deadlines) {
  std::sort(deadlines.begin(), deadlines.end());
  deadlines.erase(std::unique(deadlines.begin(), deadlines.end()),
                  deadlines.end());
  return deadlines;
}

absl::StatusOr<bool> FitsAt(const Instance& instance,
                            const std::vector<int>& deadlines) {
  absl::StatusOr<CapacityReport> report = BoundaryCondition(
      Grid(deadlines),
      SubsetWorkloads(instance, AllIndices(instance.num_tasks()), deadlines),
      instance.machines);
  if (!report.ok()) return report.status();
  return report->feasible;
}

}  // namespace

absl::StatusOr<MachineMinResult> MinimizeMachines(const Instance& instance) {
  if (instance.tasks.empty()) return MachineMinResult{0, {}};
  int64_t low = 1;
  int64_t high = 0;
  for (const Task& task : instance.tasks) {
    if (DeriveMetrics(task).min_length > task.deadline) {
      return absl::FailedPreconditionError(
          absl::StrCat("infeasible at any machine count: task ", task.id));
    }
    low = std::max(low, (task.demand + task.deadline - 1) / task.deadline);
    high += task.parallelism;
  }
  high = std::max(low, high);

  Instance probe = instance;
  const std::vector<int> deadlines = TaskDeadlines(instance);
  // Invariant: high fits.
  while (low < high) {
    probe.machines = low + (high - low) / 2;
    absl::StatusOr<bool> fits = FitsAt(probe, deadlines);
    if (!fits.ok()) return fits.status();
    if (*fits) {
      high = probe.machines;
    } else {
      low = probe.machines + 1;
    }
  }
  probe.machines = high;
  absl::StatusOr<LdfOutcome> outcome = LdfSchedule(probe);
  if (!outcome.ok()) return outcome.status();
  if (!outcome->feasible) {
    return absl::InternalError(
        absl::StrCat("LDF failed at the minimum machine count ", high));
  }
  return MachineMinResult{high, std::move(outcome->matrix)};
}

absl::string_view WeightedModeName(WeightedMode mode) {
  return mode == WeightedMode::kLateness ? "lateness" : "completion";
}

std::optional<WeightedMode> ParseWeightedMode(absl::string_view name) {
  if (name == "lateness") return WeightedMode::kLateness;
  if (name == "completion") return WeightedMode::kCompletion;
  return std::nullopt;
}

int ObjectiveHorizon(const Instance& instance) {
  int64_t sequential = 0;
  for (const Task& task : instance.tasks) {
    const int64_t width = std::min<int64_t>(
        task.parallelism, std::max<int64_t>(1, instance.machines));
    sequential += (task.demand + width - 1) / width;
  }
  return static_cast<int>(std::max<int64_t>(instance.Horizon(), sequential));
}

std::vector<Rational> ObjectiveCandidates(const Instance& instance,
                                          WeightedMode mode) {
  const int horizon = ObjectiveHorizon(instance);
  std::vector<Rational> candidates;
  for (const Task& task : instance.tasks) {
    for (int t = 1; t <= horizon; ++t) {
      const int offset =
          mode == WeightedMode::kLateness ? t - task.deadline : t;
      candidates.push_back(task.value * offset);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  return candidates;
}

std::optional<std::vector<int>> DeadlinesAt(const Instance& instance,
                                            WeightedMode mode,
                                            const Rational& lambda) {
  const int horizon = ObjectiveHorizon(instance);
  std::vector<int> deadlines;
  deadlines.reserve(instance.tasks.size());
  for (const Task& task : instance.tasks) {
    int64_t d = Floor(lambda / task.value);
    if (mode == WeightedMode::kLateness) d += task.deadline;
    if (d < 1) return std::nullopt;
    // Slots past the horizon are never needed.
    deadlines.push_back(static_cast<int>(std::min<int64_t>(d, horizon)));
  }
  return deadlines;
}

std::optional<Rational> EvaluateSchedule(const Instance& instance,
                                         const AllocationMatrix& matrix,
                                         WeightedMode mode) {
  std::optional<Rational> worst;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& task = instance.tasks[i];
    int completion = matrix.CompletionSlot(i);
    if (mode == WeightedMode::kLateness) completion -= task.deadline;
    const Rational value = task.value * completion;
    if (!worst.has_value() || value > *worst) worst = value;
  }
  return worst;
}

absl::StatusOr<WeightedResult> MinimizeMaxWeighted(const Instance& instance,
                                                   WeightedMode mode) {
  for (const Task& task : instance.tasks) {
    if (task.value <= 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("task ", task.id,
                       " needs a positive value for a weighted objective"));
    }
  }
  if (instance.tasks.empty()) {
    return absl::InvalidArgumentError(
        "weighted objective of an empty instance");
  }
  const std::vector<Rational> candidates = ObjectiveCandidates(instance, mode);
  auto feasible = [&](const Rational& lambda) -> absl::StatusOr<bool> {
    std::optional<std::vector<int>> deadlines =
        DeadlinesAt(instance, mode, lambda);
    if (!deadlines.has_value()) return false;
    return FitsAt(instance, *deadlines);
  };

  // Smallest index whose candidate is feasible; the last one always is when
  // the machines can run every task at all.
  size_t low = 0;
  size_t high = candidates.size();
  while (low < high) {
    const size_t mid = low + (high - low) / 2;
    absl::StatusOr<bool> fits = feasible(candidates[mid]);
    if (!fits.ok()) return fits.status();
    if (*fits) {
      high = mid;
    } else {
      low = mid + 1;
    }
  }
  if (low == candidates.size()) {
    return absl::FailedPreconditionError(
        "no objective value within the horizon is feasible");
  }

  WeightedResult result;
  result.objective = candidates[low];
  result.deadlines = *DeadlinesAt(instance, mode, result.objective);
  LdfOptions options;
  options.deadlines = result.deadlines;
  absl::StatusOr<LdfOutcome> outcome = LdfSchedule(instance, options);
  if (!outcome.ok()) return outcome.status();
  if (!outcome->feasible) {
    return absl::InternalError("LDF failed under the optimal deadlines");
  }
  result.matrix = std::move(outcome->matrix);
  return result;
}

}  // namespace malleable
