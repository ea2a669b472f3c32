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

#ifndef MALLEABLE_OBJECTIVES_H_
#define MALLEABLE_OBJECTIVES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "malleable/model.h"
#include "malleable/rational.h"

namespace malleable {

struct MachineMinResult {
  int64_t machines = 0;
  AllocationMatrix matrix;
};

// Smallest C at which all tasks fit, by binary search on the boundary
// condition over [max_i ceil(D_i / d_i), sum of k_i]; instance.machines is
// ignored. An empty instance gives 0.
absl::StatusOr<MachineMinResult> MinimizeMachines(const Instance& instance);

enum class WeightedMode {
  kLateness,    // max_i v_i (c_i - d_i)
  kCompletion,  // max_i v_i c_i
};

absl::string_view WeightedModeName(WeightedMode mode);
std::optional<WeightedMode> ParseWeightedMode(absl::string_view name);

// max(max_i d_i, sum_i ceil(D_i / min(k_i, C))): every task can finish by
// then in a sequential schedule.
int ObjectiveHorizon(const Instance& instance);

// Sorted distinct v_i (t - d_i) or v_i t for t in [1, H].
std::vector<Rational> ObjectiveCandidates(const Instance& instance,
                                          WeightedMode mode);

// Deadlines that keep every task's weighted objective at most `lambda`:
// d_i + floor(lambda / v_i) or floor(lambda / v_i). Unset when one of them
// falls below 1.
std::optional<std::vector<int>> DeadlinesAt(const Instance& instance,
                                            WeightedMode mode,
                                            const Rational& lambda);

// Objective value of a complete schedule; unset for an empty instance.
std::optional<Rational> EvaluateSchedule(const Instance& instance,
                                         const AllocationMatrix& matrix,
                                         WeightedMode mode);

struct WeightedResult {
  Rational objective;
  std::vector<int> deadlines;
  AllocationMatrix matrix;
};

// Smallest candidate whose deadlines pass the boundary condition, by binary
// search; every value must be positive.
absl::StatusOr<WeightedResult> MinimizeMaxWeighted(const Instance& instance,
                                                   WeightedMode mode);

}  // namespace malleable

#endif  // MALLEABLE_OBJECTIVES_H_
