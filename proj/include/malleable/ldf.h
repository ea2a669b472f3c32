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

#ifndef MALLEABLE_LDF_H_
#define MALLEABLE_LDF_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "malleable/capacity.h"
#include "malleable/model.h"

namespace malleable {

// One change to the allocation matrix. Slot 0 stands for "not allocated":
// a grant moves `amount` machine-slots from slot 0 to `to_slot`.
struct TraceEvent {
  enum class Op {
    kUtilize,   // FullyUtilize grant
    kTransfer,  // Routine moves one unit of another task to an earlier slot
    kGrant,     // FullyAllocate grant
    kShift,     // AllocateRlm moves the task's own early units to `to_slot`
  };
  Op op;
  int task;
  int from_slot;
  int to_slot;
  int amount;
};

absl::string_view OpName(TraceEvent::Op op);

// Single-line JSON record: {"op", "task", "from_slot", "to_slot", "amount"}.
std::string TraceEventToJson(const TraceEvent& event, const Instance& instance);

// Called after every matrix change with the updated matrix.
using TraceSink =
    std::function<void(const TraceEvent& event, const AllocationMatrix&)>;

// Mutable state of one scheduling run: the allocation matrix of an instance
// together with the per-task deadlines in force and the phase threshold that
// bounds Routine when it runs without the eta1 flag.
//
// Every public operation keeps 0 <= y <= k, y = 0 past the deadline and
// W(t) <= C. Operations return InternalError when a state the algorithm
// relies on does not hold (e.g. no task can be moved in Routine).
class Scheduler {
 public:
  // `deadlines` overrides the instance deadlines when non-empty; the
  // horizon is the largest deadline in force.
  explicit Scheduler(const Instance& instance, std::vector<int> deadlines = {});
  // Starts from an existing matrix, e.g. a partially built schedule.
  Scheduler(const Instance& instance, AllocationMatrix initial,
            std::vector<int> deadlines = {});

  void set_trace(TraceSink sink) { trace_ = std::move(sink); }
  void set_threshold(int slot) { threshold_ = slot; }
  int threshold() const { return threshold_; }
  int deadline(int task) const { return deadlines_[task]; }

  const AllocationMatrix& matrix() const { return matrix_; }
  AllocationMatrix TakeMatrix() && { return std::move(matrix_); }

  // From the deadline down to slot 1, gives the task
  // min{k, remaining demand, spare machines}. Requires an empty row.
  absl::Status FullyUtilize(int task);

  // Tries to raise the spare capacity at `slot` to `target` by moving single
  // units of other tasks from `slot` to the latest earlier slot with spare
  // capacity. Stops when no such slot exists; with eta1 == false also when
  // that slot is at or below the phase threshold; with eta2 == true also when
  // `task` holds no more than the current spare capacity at `slot` in the
  // slots before it. Requires 0 <= target <= k - y_task(slot).
  absl::Status Routine(int task, int slot, int64_t target, bool eta1,
                       bool eta2);

  // Completes the demand of a task after FullyUtilize, walking from its
  // deadline downward and freeing capacity with Routine(eta1 = 1,
  // eta2 = 0). FailedPreconditionError("infeasible residual ...") when slot
  // 1 is passed with demand outstanding.
  absl::Status FullyAllocate(int task);

  // Moves the task's earliest units to the latest slots it can use, keeping
  // its total allocation. Routine runs with (eta1, eta2 = 1).
  absl::Status AllocateRlm(int task, bool eta1);

  // FullyUtilize, FullyAllocate, AllocateRlm(eta1 = 1).
  absl::Status AllocateB(int task);
  // FullyUtilize, AllocateRlm(eta1 = 0). The caller must have checked the
  // admission condition; a short allocation afterwards is an InternalError.
  absl::Status AllocateA(int task);

 private:
  void Change(TraceEvent::Op op, int task, int from_slot, int to_slot,
              int amount);
  // Latest slot before `slot` with spare capacity, 0 if none.
  int LatestSpareBefore(int slot) const;

  const Instance* instance_;
  std::vector<int> deadlines_;
  AllocationMatrix matrix_;
  int threshold_ = 0;
  TraceSink trace_;
};

struct LdfOptions {
  // Return the boundary-condition verdict without running the allocation
  // when it fails. With precheck off, infeasibility is detected by the
  // allocation itself running out of slots.
  bool precheck = true;
  // Per-task deadline overrides (instance order); empty keeps the task
  // deadlines.
  std::vector<int> deadlines;
  TraceSink trace;
  // Called after each task's AllocateB.
  std::function<void(int task, const AllocationMatrix&)> after_task;
};

struct LdfOutcome {
  bool feasible = false;
  // Complete schedule when feasible; rows of unselected tasks stay zero.
  // Empty (0 x 0) when infeasible.
  AllocationMatrix matrix;
  CapacityReport report;
  // First task, in processing order, whose addition breaks feasibility.
  std::optional<int> failed_task;
};

// Latest-Deadline-First: processes deadline groups from the latest to the
// earliest (input order within a group) and calls AllocateB on each task.
// Produces a feasible schedule iff the subset satisfies the boundary
// condition.
absl::StatusOr<LdfOutcome> LdfSchedule(const Instance& instance,
                                       std::span<const int> subset,
                                       const LdfOptions& options = {});
absl::StatusOr<LdfOutcome> LdfSchedule(const Instance& instance,
                                       const LdfOptions& options = {});

// Subset in LDF processing order.
std::vector<int> LdfOrder(std::span<const int> deadlines,
                          std::span<const int> subset);

}  // namespace malleable

#endif  // MALLEABLE_LDF_H_
