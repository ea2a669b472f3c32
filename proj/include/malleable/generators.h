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

#ifndef MALLEABLE_GENERATORS_H_
#define MALLEABLE_GENERATORS_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "malleable/model.h"
#include "malleable/rational.h"

namespace malleable {

// Uniform draws within the bounds; identical params and seed give an
// identical instance. Task ids are "t0", "t1", ...
struct RandomParams {
  int num_tasks = 5;
  int64_t machines = 2;
  int max_deadline = 6;
  int max_parallelism = 3;
  int min_value = 1;
  int max_value = 10;
  // Redraw a task until d / ceil(D / k) reaches this.
  std::optional<Rational> min_slackness;
  // Deadlines come from a pool of at most this many distinct values.
  std::optional<int> max_distinct_deadlines;
  // Demand is drawn from [1, demand_factor * k * d]; values above 1 allow
  // individually infeasible tasks.
  int demand_factor = 1;
};

absl::StatusOr<Instance> GenerateRandom(const RandomParams& params,
                                        uint64_t seed);

// C * d1 unit tasks (value 1 + eps, deadline d1) and C tasks of demand
// d2 - d1 + 1 and marginal value 1 (deadline d2), all with k = 1.
struct AdversarialParams {
  int64_t machines = 2;
  int short_deadline = 2;
  int long_deadline = 4;
  Rational epsilon = MakeRational(1, 10);
};

absl::StatusOr<Instance> GenerateAdversarial(const AdversarialParams& params);

// Welfare of the best subset of an adversarial instance: the C long tasks
// plus C * (d1 - 1) unit tasks.
Rational AdversarialOptimum(const AdversarialParams& params);

}  // namespace malleable

#endif  // MALLEABLE_GENERATORS_H_
