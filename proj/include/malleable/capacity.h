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

#ifndef MALLEABLE_CAPACITY_H_
#define MALLEABLE_CAPACITY_H_

// Capacity calculus over a deadline grid tau_0 = 0 < tau_1 < ... < tau_L.
//
// For a task set S and m in [0, L]:
//   lambda_m(S)   = sum_j min(D_j, k_j * max(0, d_j - tau_{L-m})), the most
//                   work S can place in the suffix window [tau_{L-m}+1, d]
//                   with unlimited machines;
//   lambda^C_m(S) = lambda^C_{m-1} + min(lambda_m - lambda^C_{m-1},
//                                        C * (tau_{L-m+1} - tau_{L-m})),
//                   the same quantity on C machines;
//   mu_m(S)       = sum_j D_j - lambda^C_{L-m}(S), the work left for
//                   [1, tau_m].
// S is feasible on C machines iff mu_m(S) <= C * tau_m for every m in
// [0, L] (the boundary condition).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "malleable/model.h"

namespace malleable {

// The part of a task the capacity formulas look at.
struct Workload {
  int64_t demand = 0;
  int deadline = 0;
  int parallelism = 0;
};

struct CapacityReport {
  std::vector<int64_t> lambda;         // lambda_0 .. lambda_L
  std::vector<int64_t> lambda_capped;  // lambda^C_0 .. lambda^C_L
  std::vector<int64_t> residual;       // mu_0 .. mu_L
  bool feasible = true;
  std::optional<int> first_violation;  // smallest m with mu_m > C * tau_m
};

// Task id -> replacement deadline.
using DeadlineOverrides = absl::flat_hash_map<std::string, int>;

// Deadlines of every instance task after applying `overrides`.
std::vector<int> EffectiveDeadlines(const Instance& instance,
                                    const DeadlineOverrides& overrides);

// Workloads of the tasks at `subset` (instance indices), with deadlines
// taken from `deadlines` when it is non-empty.
std::vector<Workload> SubsetWorkloads(const Instance& instance,
                                      std::span<const int> subset,
                                      std::span<const int> deadlines = {});
std::vector<Workload> AllWorkloads(const Instance& instance);

// lambda_m(S). Fails when m > L or some deadline is not on the grid.
absl::StatusOr<int64_t> LambdaUnbounded(std::span<const int> taus,
                                        std::span<const Workload> jobs, int m);

// lambda_0 .. lambda_L of a single job; summing these over jobs gives the
// vector of the set. Assumes the job's deadline lies on the grid.
std::vector<int64_t> JobLambda(std::span<const int> taus, const Workload& job);

// lambda^C_0 .. lambda^C_L from lambda_0 .. lambda_L.
std::vector<int64_t> CapLambda(std::span<const int> taus,
                               std::span<const int64_t> lambda,
                               int64_t machines);

// Fills lambda and lambda_capped; residual/feasibility are left empty.
absl::StatusOr<CapacityReport> LambdaCapped(std::span<const int> taus,
                                            std::span<const Workload> jobs,
                                            int64_t machines);

absl::StatusOr<CapacityReport> BoundaryCondition(std::span<const int> taus,
                                                 std::span<const Workload> jobs,
                                                 int64_t machines);

// Boundary condition from precomputed lambda_0..lambda_L of a set whose
// total demand is `total_demand`.
CapacityReport AssessBoundary(std::span<const int> taus, int64_t total_demand,
                              std::vector<int64_t> lambda, int64_t machines);

// Boundary condition for a subset of an instance, evaluated on the grid of
// all the instance's (possibly overridden) deadlines.
absl::StatusOr<CapacityReport> InstanceBoundaryCondition(
    const Instance& instance, std::span<const int> subset,
    const DeadlineOverrides& overrides = {});
absl::StatusOr<CapacityReport> InstanceBoundaryCondition(
    const Instance& instance, const DeadlineOverrides& overrides = {});

std::vector<int> AllIndices(int n);

}  // namespace malleable

#endif  // MALLEABLE_CAPACITY_H_
