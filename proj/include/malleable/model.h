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

#ifndef MALLEABLE_MODEL_H_
#define MALLEABLE_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "malleable/rational.h"

namespace malleable {

// A malleable batch task: it must receive `demand` machine-slots within
// slots [1, deadline], using at most `parallelism` machines in any one slot.
struct Task {
  std::string id;
  Rational value;
  int64_t demand = 1;
  int deadline = 1;
  int parallelism = 1;

  friend bool operator==(const Task&, const Task&) = default;
};

// C identical machines and an ordered task list. The list order is the
// canonical order used to break every tie.
struct Instance {
  int64_t machines = 1;
  std::vector<Task> tasks;

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  // Largest deadline; 0 for an empty instance.
  int Horizon() const;
  std::optional<int> IndexOf(absl::string_view id) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct DerivedMetrics {
  int64_t min_length = 0;   // ceil(demand / parallelism)
  Rational slackness;       // deadline / min_length
  Rational marginal_value;  // value / demand
};

DerivedMetrics DeriveMetrics(const Task& task);

// Minimum slackness over all tasks, or nullopt for an empty instance.
std::optional<Rational> InstanceSlackness(const Instance& instance);

enum class ViolationKind {
  kInvalid,                 // a format or invariant error
  kIndividuallyInfeasible,  // legal input, but min_length > deadline
};

struct Violation {
  ViolationKind kind;
  std::string path;  // e.g. "tasks[2].demand"
  std::string message;
};

// Lists every invariant violation. Individually infeasible tasks are
// reported with kIndividuallyInfeasible; they do not make the instance
// malformed.
std::vector<Violation> ValidateInstance(const Instance& instance);

bool HasInvalid(std::span<const Violation> violations);

// Sorted distinct deadlines tau_1 < ... < tau_L with tau_0 = 0 implied, and
// the tasks grouped by deadline.
struct DeadlineProfile {
  std::vector<int> taus;
  // groups[m - 1] holds the indices (into the list the profile was built
  // from) of the tasks whose deadline is taus[m - 1], in list order.
  std::vector<std::vector<int>> groups;

  int size() const { return static_cast<int>(taus.size()); }
  // tau(0) == 0; tau(m) for m in [1, L].
  int tau(int m) const { return m == 0 ? 0 : taus[m - 1]; }
  int horizon() const { return taus.empty() ? 0 : taus.back(); }
};

absl::StatusOr<DeadlineProfile> BuildProfile(std::span<const Task> tasks);
absl::StatusOr<DeadlineProfile> BuildProfileFromDeadlines(
    std::span<const int> deadlines);

// Per-task, per-slot machine counts y_i(t) over slots [1, horizon], plus the
// per-slot load W(t) kept in sync with the cells.
class AllocationMatrix {
 public:
  AllocationMatrix() = default;
  AllocationMatrix(int num_tasks, int horizon, int64_t machines);

  int num_tasks() const { return num_tasks_; }
  int horizon() const { return horizon_; }
  int64_t machines() const { return machines_; }

  int at(int task, int slot) const { return cells_[Offset(task, slot)]; }
  void Set(int task, int slot, int amount);
  void Add(int task, int slot, int delta) {
    Set(task, slot, at(task, slot) + delta);
  }

  // W(t).
  int64_t Load(int slot) const { return load_[slot - 1]; }
  // C - W(t).
  int64_t Spare(int slot) const { return machines_ - load_[slot - 1]; }

  // Sum of y_task(t) over t in [first, last]; empty ranges give 0.
  int64_t Allocated(int task, int first, int last) const;
  int64_t Total(int task) const { return Allocated(task, 1, horizon_); }
  std::span<const int> Row(int task) const {
    return {cells_.data() + static_cast<size_t>(task) * horizon_,
            static_cast<size_t>(horizon_)};
  }
  // Last slot with positive allocation, 0 if none.
  int CompletionSlot(int task) const;

  friend bool operator==(const AllocationMatrix&,
                         const AllocationMatrix&) = default;

 private:
  size_t Offset(int task, int slot) const {
    return static_cast<size_t>(task) * horizon_ + (slot - 1);
  }

  int num_tasks_ = 0;
  int horizon_ = 0;
  int64_t machines_ = 0;
  std::vector<int> cells_;
  std::vector<int64_t> load_;
};

// Checks 0 <= y <= k, y == 0 past the deadline and W(t) <= C. `deadlines`
// overrides the task deadlines when non-empty. Returns human-readable
// violations.
std::vector<std::string> CheckAllocation(const Instance& instance,
                                         const AllocationMatrix& matrix,
                                         std::span<const int> deadlines = {});

// Sum of values of the tasks whose total allocation reaches their demand.
Rational AllocatedWelfare(const Instance& instance,
                          const AllocationMatrix& matrix);

std::vector<int> TaskDeadlines(const Instance& instance);

}  // namespace malleable

#endif  // MALLEABLE_MODEL_H_
