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

#include "malleable/greedy.h"

#include <algorithm>

#include "absl/status/status.h"

namespace malleable {
namespace {

bool SuffixOptimal(const Instance& instance, const AllocationMatrix& matrix,
                   int task, int threshold) {
  const Task& t = instance.tasks[task];
  const int64_t window = std::max(0, t.deadline - threshold);
  const int64_t expected = std::min<int64_t>(t.demand, t.parallelism * window);
  return matrix.Allocated(task, threshold + 1, matrix.horizon()) == expected;
}

bool Feature2(const Instance& instance, const GreedyResult& result,
              bool own_phase_onward) {
  const auto& phases = result.phases.phases;
  for (size_t p = 0; p < phases.size(); ++p) {
    for (int task : phases[p].accepted) {
      if (!SuffixOptimal(instance, result.matrix, task, 0)) return false;
      for (size_t m = own_phase_onward ? p : 0; m < phases.size(); ++m) {
        if (phases[m].threshold.has_value() &&
            !SuffixOptimal(instance, result.matrix, task,
                           *phases[m].threshold)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

std::vector<int> GreedyOrder(const Instance& instance) {
  std::vector<Rational> marginal;
  marginal.reserve(instance.tasks.size());
  for (const Task& task : instance.tasks) {
    marginal.push_back(DeriveMetrics(task).marginal_value);
  }
  std::vector<int> order = AllIndices(instance.num_tasks());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (marginal[a] != marginal[b]) return marginal[a] > marginal[b];
    return instance.tasks[a].value > instance.tasks[b].value;
  });
  return order;
}

bool AdmissionCheck(const Instance& instance, const AllocationMatrix& matrix,
                    int task) {
  const Task& t = instance.tasks[task];
  const int last = std::min(t.deadline, matrix.horizon());
  int64_t grabbable = 0;
  for (int slot = 1; slot <= last; ++slot) {
    grabbable += std::min<int64_t>(matrix.Spare(slot), t.parallelism);
  }
  return grabbable >= t.demand;
}

absl::StatusOr<GreedyResult> GreedyRlm(const Instance& instance,
                                       const GreedyOptions& options) {
  const std::vector<int> order = GreedyOrder(instance);
  const int n = instance.num_tasks();
  Scheduler scheduler(instance);
  scheduler.set_trace(options.trace);

  GreedyResult result;
  Phase current;
  int max_rejected = 0;
  int max_accepted = 0;
  int pos = 0;
  while (pos < n) {
    const int task = order[pos];
    if (AdmissionCheck(instance, scheduler.matrix(), task)) {
      if (absl::Status s = scheduler.AllocateA(task); !s.ok()) return s;
      current.accepted.push_back(task);
      max_accepted = std::max(max_accepted, instance.tasks[task].deadline);
      ++pos;
      continue;
    }
    // Collect the whole run of rejections; admission is tested against the
    // same matrix since nothing is allocated in between.
    while (pos < n &&
           !AdmissionCheck(instance, scheduler.matrix(), order[pos])) {
      current.rejected.push_back(order[pos]);
      max_rejected =
          std::max(max_rejected, instance.tasks[order[pos]].deadline);
      ++pos;
    }
    current.max_rejected_deadline = max_rejected;
    current.max_accepted_deadline = max_accepted;
    int threshold = max_rejected;
    if (max_rejected < max_accepted) {
      threshold = max_accepted;
      for (int t = max_rejected + 1; t <= max_accepted; ++t) {
        if (scheduler.matrix().Spare(t) > 0) {
          threshold = t - 1;
          break;
        }
      }
    }
    current.threshold = threshold;
    scheduler.set_threshold(threshold);
    if (options.on_phase_closed) {
      options.on_phase_closed(result.phases.num_phases(), scheduler.matrix());
    }
    result.phases.phases.push_back(std::move(current));
    current = Phase{};
  }
  if (!current.accepted.empty()) {
    current.max_rejected_deadline = max_rejected;
    current.max_accepted_deadline = max_accepted;
    result.phases.phases.push_back(std::move(current));
  }

  result.matrix = std::move(scheduler).TakeMatrix();
  for (const Phase& phase : result.phases.phases) {
    result.accepted.insert(result.accepted.end(), phase.accepted.begin(),
                           phase.accepted.end());
  }
  std::sort(result.accepted.begin(), result.accepted.end());
  result.welfare = 0;
  for (int i : result.accepted) result.welfare += instance.tasks[i].value;
  result.slackness = InstanceSlackness(instance);
  result.ratio_bound = 0;
  if (result.slackness.has_value()) {
    result.ratio_bound = (*result.slackness - 1) / *result.slackness;
  }
  return result;
}

bool CheckFeature1(const Instance& instance, const GreedyResult& result,
                   const Rational& r) {
  std::vector<int> accepted_so_far;
  for (const Phase& phase : result.phases.phases) {
    accepted_so_far.insert(accepted_so_far.end(), phase.accepted.begin(),
                           phase.accepted.end());
    if (!phase.threshold.has_value() || *phase.threshold <= 0) continue;
    const int t = std::min(*phase.threshold, result.matrix.horizon());
    int64_t used = 0;
    for (int i : accepted_so_far) used += result.matrix.Allocated(i, 1, t);
    if (Rational(used) < r * instance.machines * *phase.threshold) {
      return false;
    }
  }
  return true;
}

bool CheckFeature2(const Instance& instance, const GreedyResult& result) {
  return Feature2(instance, result, /*own_phase_onward=*/true);
}

bool CheckFeature2AllThresholds(const Instance& instance,
                                const GreedyResult& result) {
  return Feature2(instance, result, /*own_phase_onward=*/false);
}

}  // namespace malleable
