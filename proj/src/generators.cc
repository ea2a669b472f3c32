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

#include "malleable/generators.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace malleable {
namespace {

constexpr int kMaxRedraws = 10000;

int64_t Uniform(std::mt19937_64& rng, int64_t low, int64_t high) {
  return std::uniform_int_distribution<int64_t>(low, high)(rng);
}

}  // namespace

absl::StatusOr<Instance> GenerateRandom(const RandomParams& params,
                                        uint64_t seed) {
  if (params.num_tasks < 0 || params.machines < 1 || params.max_deadline < 1 ||
      params.max_parallelism < 1 || params.min_value < 0 ||
      params.max_value < params.min_value || params.demand_factor < 1) {
    return absl::InvalidArgumentError("random generator bounds out of range");
  }
  if (params.max_distinct_deadlines.has_value() &&
      *params.max_distinct_deadlines < 1) {
    return absl::InvalidArgumentError("max distinct deadlines must be >= 1");
  }
  std::mt19937_64 rng(seed);

  std::vector<int> pool(params.max_deadline);
  std::iota(pool.begin(), pool.end(), 1);
  if (params.max_distinct_deadlines.has_value() &&
      *params.max_distinct_deadlines < params.max_deadline) {
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(*params.max_distinct_deadlines);
    std::sort(pool.begin(), pool.end());
  }
  if (params.min_slackness.has_value() && *params.min_slackness > pool.back()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "no task with deadline <= ", pool.back(), " reaches slackness ",
        FormatDecimal(*params.min_slackness)));
  }

  Instance instance;
  instance.machines = params.machines;
  for (int i = 0; i < params.num_tasks; ++i) {
    Task task;
    task.id = absl::StrCat("t", i);
    task.value = Uniform(rng, params.min_value, params.max_value);
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        return absl::ResourceExhaustedError(
            "slackness bound rejected every draw");
      }
      task.deadline = pool[Uniform(rng, 0, pool.size() - 1)];
      task.parallelism =
          static_cast<int>(Uniform(rng, 1, params.max_parallelism));
      task.demand = Uniform(
          rng, 1,
          int64_t{params.demand_factor} * task.parallelism * task.deadline);
      if (!params.min_slackness.has_value() ||
          DeriveMetrics(task).slackness >= *params.min_slackness) {
        break;
      }
    }
    instance.tasks.push_back(std::move(task));
  }
  return instance;
}

absl::StatusOr<Instance> GenerateAdversarial(const AdversarialParams& params) {
  if (params.machines < 1 || params.short_deadline < 1) {
    return absl::InvalidArgumentError("adversarial bounds out of range");
  }
  if (params.long_deadline <= params.short_deadline) {
    return absl::InvalidArgumentError(
        "the long deadline must exceed the short one");
  }
  if (params.epsilon <= 0) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  Instance instance;
  instance.machines = params.machines;
  const int64_t units = params.machines * params.short_deadline;
  for (int64_t i = 0; i < units; ++i) {
    instance.tasks.push_back({absl::StrCat("u", i), 1 + params.epsilon, 1,
                              params.short_deadline, 1});
  }
  const int64_t length = params.long_deadline - params.short_deadline + 1;
  for (int64_t i = 0; i < params.machines; ++i) {
    instance.tasks.push_back({absl::StrCat("b", i), Rational(length), length,
                              params.long_deadline, 1});
  }
  return instance;
}

Rational AdversarialOptimum(const AdversarialParams& params) {
  const int64_t length = params.long_deadline - params.short_deadline + 1;
  return params.machines *
         ((1 + params.epsilon) * (params.short_deadline - 1) + length);
}

}  // namespace malleable
