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

#ifndef MALLEABLE_DP_H_
#define MALLEABLE_DP_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "malleable/capacity.h"
#include "malleable/model.h"
#include "malleable/rational.h"

namespace malleable {

// h_m = lambda^C_m - lambda^C_{m-1} for m in [1, L].
using StateVector = std::vector<int64_t>;

absl::StatusOr<StateVector> ComputeStateVector(std::span<const int> taus,
                                               std::span<const Workload> jobs,
                                               int64_t machines);

StateVector StateFromCapped(std::span<const int64_t> lambda_capped);

struct DominancePair {
  StateVector state;
  Rational value;
  std::vector<int> subset;  // ascending instance indices
};

inline constexpr double kDefaultStateBudget = 1e7;

struct DpOptions {
  // Refuse when (C * d + 1)^L exceeds this.
  double state_budget = kDefaultStateBudget;
  // Called with each finished list A(j), j 1-based. Subsets are rebuilt for
  // the call, so this is for inspection only.
  std::function<void(int j, std::span<const DominancePair>)> on_list;
};

struct DpSelection {
  std::vector<int> subset;  // ascending instance indices
  Rational welfare;
  StateVector state;
  std::vector<size_t> list_sizes;  // |A(1)| .. |A(n)|
};

// (C * d + 1)^L for the instance's deadline grid.
double StateSpaceBound(const Instance& instance);

absl::StatusOr<DpSelection> DpSelect(const Instance& instance,
                                     const DpOptions& options = {});

struct DpSolution {
  DpSelection selection;
  AllocationMatrix matrix;
};

// DpSelect followed by LDF on the winning subset.
absl::StatusOr<DpSolution> DpSolve(const Instance& instance,
                                   const DpOptions& options = {});

}  // namespace malleable

#endif  // MALLEABLE_DP_H_
