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

#include "malleable/model.h"

#include <algorithm>
#include <map>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace malleable {

int Instance::Horizon() const {
  int horizon = 0;
  for (const Task& task : tasks) horizon = std::max(horizon, task.deadline);
  return horizon;
}

std::optional<int> Instance::IndexOf(absl::string_view id) const {
  for (int i = 0; i < num_tasks(); ++i) {
    if (tasks[i].id == id) return i;
  }
  return std::nullopt;
}

DerivedMetrics DeriveMetrics(const Task& task) {
  DerivedMetrics metrics;
  metrics.min_length = (task.demand + task.parallelism - 1) / task.parallelism;
  metrics.slackness = MakeRational(task.deadline, metrics.min_length);
  metrics.marginal_value = task.value / Rational(task.demand);
  return metrics;
}

std::optional<Rational> InstanceSlackness(const Instance& instance) {
  std::optional<Rational> slackness;
  for (const Task& task : instance.tasks) {
    Rational s = DeriveMetrics(task).slackness;
    if (!slackness.has_value() || s < *slackness) slackness = s;
  }
  return slackness;
}

std::vector<Violation> ValidateInstance(const Instance& instance) {
  std::vector<Violation> violations;
  auto invalid = [&](std::string path, std::string message) {
    violations.push_back(
        {ViolationKind::kInvalid, std::move(path), std::move(message)});
  };
  if (instance.machines < 1) invalid("machines", "machines must be >= 1");

  absl::flat_hash_set<std::string> seen;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& task = instance.tasks[i];
    const std::string prefix = absl::StrCat("tasks[", i, "]");
    bool well_formed = true;
    if (task.id.empty()) invalid(prefix + ".id", "id must be non-empty");
    if (!seen.insert(task.id).second) {
      invalid(prefix + ".id", absl::StrCat("duplicate id \"", task.id, "\""));
    }
    if (task.value < 0) invalid(prefix + ".value", "value must be >= 0");
    if (task.demand < 1) {
      invalid(prefix + ".demand", "demand must be >= 1");
      well_formed = false;
    }
    if (task.deadline < 1) {
      invalid(prefix + ".deadline", "deadline must be >= 1");
      well_formed = false;
    }
    if (task.parallelism < 1) {
      invalid(prefix + ".parallelism", "parallelism must be >= 1");
      well_formed = false;
    }
    if (well_formed && DeriveMetrics(task).min_length > task.deadline) {
      violations.push_back(
          {ViolationKind::kIndividuallyInfeasible, prefix,
           absl::StrCat("task \"", task.id,
                        "\" is individually infeasible (min length ",
                        DeriveMetrics(task).min_length, " > deadline ",
                        task.deadline, ")")});
    }
  }
  return violations;
}

bool HasInvalid(std::span<const Violation> violations) {
  return std::any_of(
      violations.begin(), violations.end(),
      [](const Violation& v) { return v.kind == ViolationKind::kInvalid; });
}

absl::StatusOr<DeadlineProfile> BuildProfileFromDeadlines(
    std::span<const int> deadlines) {
  if (deadlines.empty()) return absl::InvalidArgumentError("empty instance");
  std::map<int, std::vector<int>> by_deadline;
  for (int i = 0; i < static_cast<int>(deadlines.size()); ++i) {
    if (deadlines[i] < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("deadline ", deadlines[i], " is not positive"));
    }
    by_deadline[deadlines[i]].push_back(i);
  }
  DeadlineProfile profile;
  for (auto& [tau, group] : by_deadline) {
    profile.taus.push_back(tau);
    profile.groups.push_back(std::move(group));
  }
  return profile;
}

absl::StatusOr<DeadlineProfile> BuildProfile(std::span<const Task> tasks) {
  std::vector<int> deadlines;
  deadlines.reserve(tasks.size());
  for (const Task& task : tasks) deadlines.push_back(task.deadline);
  return BuildProfileFromDeadlines(deadlines);
}

AllocationMatrix::AllocationMatrix(int num_tasks, int horizon, int64_t machines)
    : num_tasks_(num_tasks),
      horizon_(horizon),
      machines_(machines),
      cells_(static_cast<size_t>(num_tasks) * horizon, 0),
      load_(horizon, 0) {}

void AllocationMatrix::Set(int task, int slot, int amount) {
  int& cell = cells_[Offset(task, slot)];
  load_[slot - 1] += amount - cell;
  cell = amount;
}

int64_t AllocationMatrix::Allocated(int task, int first, int last) const {
  first = std::max(first, 1);
  last = std::min(last, horizon_);
  int64_t sum = 0;
  for (int t = first; t <= last; ++t) sum += at(task, t);
  return sum;
}

int AllocationMatrix::CompletionSlot(int task) const {
  for (int t = horizon_; t >= 1; --t) {
    if (at(task, t) > 0) return t;
  }
  return 0;
}

std::vector<std::string> CheckAllocation(const Instance& instance,
                                         const AllocationMatrix& matrix,
                                         std::span<const int> deadlines) {
  std::vector<std::string> problems;
  if (matrix.num_tasks() != instance.num_tasks()) {
    problems.push_back(absl::StrCat("matrix has ", matrix.num_tasks(),
                                    " rows for ", instance.num_tasks(),
                                    " tasks"));
    return problems;
  }
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& task = instance.tasks[i];
    const int deadline = deadlines.empty() ? task.deadline : deadlines[i];
    for (int t = 1; t <= matrix.horizon(); ++t) {
      const int y = matrix.at(i, t);
      if (y < 0 || y > task.parallelism) {
        problems.push_back(absl::StrCat("task ", task.id, " slot ", t,
                                        ": allocation ", y, " outside [0, ",
                                        task.parallelism, "]"));
      }
      if (t > deadline && y != 0) {
        problems.push_back(absl::StrCat("task ", task.id, " slot ", t,
                                        ": allocation after deadline ",
                                        deadline));
      }
    }
  }
  for (int t = 1; t <= matrix.horizon(); ++t) {
    int64_t column = 0;
    for (int i = 0; i < matrix.num_tasks(); ++i) column += matrix.at(i, t);
    if (column != matrix.Load(t)) {
      problems.push_back(absl::StrCat("slot ", t, ": cached load ",
                                      matrix.Load(t), " != column sum ",
                                      column));
    }
    if (column > instance.machines) {
      problems.push_back(absl::StrCat("slot ", t, ": load ", column,
                                      " exceeds ", instance.machines,
                                      " machines"));
    }
  }
  return problems;
}

Rational AllocatedWelfare(const Instance& instance,
                          const AllocationMatrix& matrix) {
  Rational welfare = 0;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (matrix.Total(i) >= instance.tasks[i].demand) {
      welfare += instance.tasks[i].value;
    }
  }
  return welfare;
}

std::vector<int> TaskDeadlines(const Instance& instance) {
  std::vector<int> deadlines;
  deadlines.reserve(instance.tasks.size());
  for (const Task& task : instance.tasks) deadlines.push_back(task.deadline);
  return deadlines;
}

}  // namespace malleable
