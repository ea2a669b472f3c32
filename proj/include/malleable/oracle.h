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

#ifndef MALLEABLE_ORACLE_H_
#define MALLEABLE_ORACLE_H_

// Ground-truth checks that do not use the capacity formulas or LDF. Small
// instances only; these favour obviousness over speed.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "malleable/model.h"
#include "malleable/objectives.h"
#include "malleable/rational.h"

namespace malleable {

struct FlowOptions {
  // Per-task deadlines in instance order; empty keeps the task deadlines.
  std::vector<int> deadlines;
  // Only slots in [first, last] may be used.
  std::optional<std::pair<int, int>> window;
};

struct FlowResult {
  bool feasible = false;  // flow saturates every demand
  int64_t flow = 0;
  int64_t demand = 0;
  // Allocation read off the flow; horizon is the largest deadline in force.
  AllocationMatrix matrix;
};

// Transportation network source -> task (D_i) -> slot t <= d_i (k_i) ->
// sink (C), solved with push-relabel.
FlowResult FlowFeasible(const Instance& instance, std::span<const int> subset,
                        int64_t machines, const FlowOptions& options = {});

struct WelfareOptimum {
  Rational welfare;
  std::vector<int> subset;
};

inline constexpr int kExhaustiveTaskLimit = 16;

// Best total value over all flow-feasible subsets. Refuses instances with
// more than `max_tasks` tasks.
absl::StatusOr<WelfareOptimum> ExhaustiveWelfare(
    const Instance& instance, int max_tasks = kExhaustiveTaskLimit);

// Smallest machine count at which every task fits, by linear scan from
// max_i ceil(D_i / d_i) with flow feasibility.
absl::StatusOr<int64_t> ScanMachineMin(const Instance& instance);

// Smallest candidate objective value whose deadline assignment is flow
// feasible, by scanning the whole sorted candidate list.
absl::StatusOr<Rational> ScanMaxWeighted(const Instance& instance,
                                         WeightedMode mode);

}  // namespace malleable

#endif  // MALLEABLE_ORACLE_H_
