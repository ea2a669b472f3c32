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

#include "malleable/capacity.h"

#include <algorithm>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace malleable {
namespace {

int Tau(std::span<const int> taus, int m) { return m == 0 ? 0 : taus[m - 1]; }

absl::Status CheckGrid(std::span<const int> taus,
                       std::span<const Workload> jobs) {
  for (const Workload& job : jobs) {
    if (!std::binary_search(taus.begin(), taus.end(), job.deadline)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "deadline ", job.deadline, " is not on the deadline grid"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<int> AllIndices(int n) {
  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  return indices;
}

std::vector<int> EffectiveDeadlines(const Instance& instance,
                                    const DeadlineOverrides& overrides) {
  std::vector<int> deadlines = TaskDeadlines(instance);
  for (int i = 0; i < instance.num_tasks(); ++i) {
    auto it = overrides.find(instance.tasks[i].id);
    if (it != overrides.end()) deadlines[i] = it->second;
  }
  return deadlines;
}

std::vector<Workload> SubsetWorkloads(const Instance& instance,
                                      std::span<const int> subset,
                                      std::span<const int> deadlines) {
  std::vector<Workload> jobs;
  jobs.reserve(subset.size());
  for (int i : subset) {
    const Task& task = instance.tasks[i];
    jobs.push_back({task.demand,
                    deadlines.empty() ? task.deadline : deadlines[i],
                    task.parallelism});
  }
  return jobs;
}

std::vector<Workload> AllWorkloads(const Instance& instance) {
  return SubsetWorkloads(instance, AllIndices(instance.num_tasks()));
}

std::vector<int64_t> JobLambda(std::span<const int> taus, const Workload& job) {
  const int num_deadlines = static_cast<int>(taus.size());
  std::vector<int64_t> lambda(num_deadlines + 1, 0);
  for (int m = 1; m <= num_deadlines; ++m) {
    const int64_t width =
        std::max(0, job.deadline - Tau(taus, num_deadlines - m));
    lambda[m] = std::min(job.demand, job.parallelism * width);
  }
  return lambda;
}

absl::StatusOr<int64_t> LambdaUnbounded(std::span<const int> taus,
                                        std::span<const Workload> jobs, int m) {
  const int num_deadlines = static_cast<int>(taus.size());
  if (m < 0 || m > num_deadlines) {
    return absl::OutOfRangeError(
        absl::StrCat("window index ", m, " outside [0, ", num_deadlines, "]"));
  }
  if (absl::Status status = CheckGrid(taus, jobs); !status.ok()) return status;
  if (m == 0) return 0;
  const int left = Tau(taus, num_deadlines - m);
  int64_t sum = 0;
  for (const Workload& job : jobs) {
    sum += std::min<int64_t>(
        job.demand,
        job.parallelism * int64_t{std::max(0, job.deadline - left)});
  }
  return sum;
}

std::vector<int64_t> CapLambda(std::span<const int> taus,
                               std::span<const int64_t> lambda,
                               int64_t machines) {
  const int num_deadlines = static_cast<int>(taus.size());
  std::vector<int64_t> capped(num_deadlines + 1, 0);
  for (int m = 1; m <= num_deadlines; ++m) {
    const int64_t window = machines * (Tau(taus, num_deadlines - m + 1) -
                                       Tau(taus, num_deadlines - m));
    capped[m] = capped[m - 1] + std::min(lambda[m] - capped[m - 1], window);
  }
  return capped;
}

absl::StatusOr<CapacityReport> LambdaCapped(std::span<const int> taus,
                                            std::span<const Workload> jobs,
                                            int64_t machines) {
  if (machines < 1) {
    return absl::InvalidArgumentError("machine count must be >= 1");
  }
  if (absl::Status status = CheckGrid(taus, jobs); !status.ok()) return status;
  CapacityReport report;
  report.lambda.assign(taus.size() + 1, 0);
  for (const Workload& job : jobs) {
    std::vector<int64_t> own = JobLambda(taus, job);
    for (size_t m = 0; m < own.size(); ++m) report.lambda[m] += own[m];
  }
  report.lambda_capped = CapLambda(taus, report.lambda, machines);
  return report;
}

CapacityReport AssessBoundary(std::span<const int> taus, int64_t total_demand,
                              std::vector<int64_t> lambda, int64_t machines) {
  const int num_deadlines = static_cast<int>(taus.size());
  CapacityReport report;
  report.lambda_capped = CapLambda(taus, lambda, machines);
  report.lambda = std::move(lambda);
  report.residual.resize(num_deadlines + 1);
  for (int m = 0; m <= num_deadlines; ++m) {
    report.residual[m] = total_demand - report.lambda_capped[num_deadlines - m];
    if (report.residual[m] > machines * Tau(taus, m) &&
        !report.first_violation.has_value()) {
      report.feasible = false;
      report.first_violation = m;
    }
  }
  return report;
}

absl::StatusOr<CapacityReport> BoundaryCondition(std::span<const int> taus,
                                                 std::span<const Workload> jobs,
                                                 int64_t machines) {
  absl::StatusOr<CapacityReport> lambdas = LambdaCapped(taus, jobs, machines);
  if (!lambdas.ok()) return lambdas.status();
  int64_t total = 0;
  for (const Workload& job : jobs) total += job.demand;
  return AssessBoundary(taus, total, std::move(lambdas->lambda), machines);
}

absl::StatusOr<CapacityReport> InstanceBoundaryCondition(
    const Instance& instance, std::span<const int> subset,
    const DeadlineOverrides& overrides) {
  const std::vector<int> deadlines = EffectiveDeadlines(instance, overrides);
  std::vector<int> taus = deadlines;
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  const std::vector<Workload> jobs =
      SubsetWorkloads(instance, subset, deadlines);
  return BoundaryCondition(taus, jobs, instance.machines);
}

absl::StatusOr<CapacityReport> InstanceBoundaryCondition(
    const Instance& instance, const DeadlineOverrides& overrides) {
  return InstanceBoundaryCondition(instance, AllIndices(instance.num_tasks()),
                                   overrides);
}

}  // namespace malleable
