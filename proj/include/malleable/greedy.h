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

#ifndef MALLEABLE_GREEDY_H_
#define MALLEABLE_GREEDY_H_

#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "malleable/ldf.h"
#include "malleable/model.h"
#include "malleable/rational.h"

namespace malleable {

// One phase of a greedy run: a run of accepted tasks closed by a run of
// rejected ones. Task lists hold instance indices in processing order.
struct Phase {
  std::vector<int> accepted;
  std::vector<int> rejected;
  int max_rejected_deadline = 0;  // c_m, over every rejection so far
  int max_accepted_deadline = 0;  // c'_m, over every acceptance so far
  // Unset for a final phase that ends without a rejection.
  std::optional<int> threshold;

  friend bool operator==(const Phase&, const Phase&) = default;
};

struct PhaseLog {
  std::vector<Phase> phases;

  int num_phases() const { return static_cast<int>(phases.size()); }
  friend bool operator==(const PhaseLog&, const PhaseLog&) = default;
};

struct GreedyResult {
  AllocationMatrix matrix;
  std::vector<int> accepted;  // ascending instance indices
  Rational welfare;
  PhaseLog phases;
  std::optional<Rational> slackness;  // unset for an empty instance
  Rational ratio_bound;               // (s - 1) / s, 0 without tasks

  friend bool operator==(const GreedyResult&, const GreedyResult&) = default;
};

// Non-increasing marginal value; ties by larger value, then input order.
std::vector<int> GreedyOrder(const Instance& instance);

// sum_{t <= d_i} min(spare(t), k_i) >= D_i.
bool AdmissionCheck(const Instance& instance, const AllocationMatrix& matrix,
                    int task);

struct GreedyOptions {
  TraceSink trace;
  // Called when phase `phase` (0-based) closes, before any later task.
  std::function<void(int phase, const AllocationMatrix&)> on_phase_closed;
};

absl::StatusOr<GreedyResult> GreedyRlm(const Instance& instance,
                                       const GreedyOptions& options = {});

// For every phase m with a positive threshold t, the tasks accepted in
// phases 1..m hold at least r * C * t units in [1, t].
bool CheckFeature1(const Instance& instance, const GreedyResult& result,
                   const Rational& r);

// Every accepted task holds min(D_i, k_i * max(0, d_i - t)) units after
// each threshold t, for every threshold of its own phase or later.
bool CheckFeature2(const Instance& instance, const GreedyResult& result);

// The same suffix condition against every threshold of the run.
bool CheckFeature2AllThresholds(const Instance& instance,
                                const GreedyResult& result);

}  // namespace malleable

#endif  // MALLEABLE_GREEDY_H_
