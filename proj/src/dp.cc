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

#include "malleable/dp.h"

#include <algorithm>
#include <cmath>

#include "absl/container/flat_hash_map.h"
#include "absl/hash/hash.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "malleable/ldf.h"

namespace malleable {
namespace {

// Predecessor links: node 0 is the empty set.
struct Node {
  int parent;
  int task;
};

struct Entry {
  std::vector<int64_t> lambda;  // unbounded lambda_0..lambda_L of F
  int64_t demand;
  StateVector state;
  Rational value;
  int node;
};

std::vector<int> Rebuild(const std::vector<Node>& nodes, int node) {
  std::vector<int> subset;
  for (; node != 0; node = nodes[node].parent) {
    subset.push_back(nodes[node].task);
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

std::vector<int> SortedDeadlines(const Instance& instance) {
  std::vector<int> taus = TaskDeadlines(instance);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  return taus;
}

}  // namespace

StateVector StateFromCapped(std::span<const int64_t> lambda_capped) {
  StateVector state;
  for (size_t m = 1; m < lambda_capped.size(); ++m) {
    state.push_back(lambda_capped[m] - lambda_capped[m - 1]);
  }
  return state;
}

absl::StatusOr<StateVector> ComputeStateVector(std::span<const int> taus,
                                               std::span<const Workload> jobs,
                                               int64_t machines) {
  absl::StatusOr<CapacityReport> report = LambdaCapped(taus, jobs, machines);
  if (!report.ok()) return report.status();
  return StateFromCapped(report->lambda_capped);
}

double StateSpaceBound(const Instance& instance) {
  const std::vector<int> taus = SortedDeadlines(instance);
  const double base =
      static_cast<double>(instance.machines) * instance.Horizon() + 1;
  return std::pow(base, static_cast<double>(taus.size()));
}

absl::StatusOr<DpSelection> DpSelect(const Instance& instance,
                                     const DpOptions& options) {
  if (const double bound = StateSpaceBound(instance);
      bound > options.state_budget) {
    return absl::ResourceExhaustedError(
        absl::StrCat("state space bound ", bound, " exceeds budget ",
                     options.state_budget, "; use greedy"));
  }
  const std::vector<int> taus = SortedDeadlines(instance);
  const int num_levels = static_cast<int>(taus.size());

  std::vector<Node> nodes = {{-1, -1}};
  std::vector<Entry> list = {{std::vector<int64_t>(num_levels + 1, 0), 0,
                              StateVector(num_levels, 0), Rational(0), 0}};
  DpSelection selection;

  for (int j = 0; j < instance.num_tasks(); ++j) {
    const Task& task = instance.tasks[j];
    const std::vector<int64_t> own =
        JobLambda(taus, {task.demand, task.deadline, task.parallelism});
    absl::flat_hash_map<StateVector, size_t> index;
    for (size_t e = 0; e < list.size(); ++e) index.emplace(list[e].state, e);

    std::vector<Entry> next = list;
    for (const Entry& entry : list) {
      std::vector<int64_t> lambda = entry.lambda;
      for (int m = 0; m <= num_levels; ++m) lambda[m] += own[m];
      const int64_t demand = entry.demand + task.demand;
      CapacityReport report =
          AssessBoundary(taus, demand, lambda, instance.machines);
      if (!report.feasible) continue;

      Entry candidate{std::move(lambda), demand,
                      StateFromCapped(report.lambda_capped),
                      entry.value + task.value, 0};
      auto it = index.find(candidate.state);
      if (it == index.end()) {
        nodes.push_back({entry.node, j});
        candidate.node = static_cast<int>(nodes.size()) - 1;
        index.emplace(candidate.state, next.size());
        next.push_back(std::move(candidate));
        continue;
      }
      Entry& incumbent = next[it->second];
      if (candidate.value < incumbent.value) continue;
      if (candidate.value == incumbent.value) {
        std::vector<int> mine = Rebuild(nodes, entry.node);
        mine.push_back(j);
        if (!(mine < Rebuild(nodes, incumbent.node))) continue;
      }
      nodes.push_back({entry.node, j});
      candidate.node = static_cast<int>(nodes.size()) - 1;
      incumbent = std::move(candidate);
    }
    list = std::move(next);
    selection.list_sizes.push_back(list.size());

    if (options.on_list) {
      std::vector<DominancePair> pairs;
      pairs.reserve(list.size());
      for (const Entry& entry : list) {
        pairs.push_back({entry.state, entry.value, Rebuild(nodes, entry.node)});
      }
      options.on_list(j + 1, pairs);
    }
  }

  const Entry* best = &list.front();
  std::vector<int> best_subset = Rebuild(nodes, best->node);
  for (const Entry& entry : list) {
    if (entry.value < best->value) continue;
    std::vector<int> subset = Rebuild(nodes, entry.node);
    if (entry.value > best->value || subset < best_subset) {
      best = &entry;
      best_subset = std::move(subset);
    }
  }
  selection.subset = std::move(best_subset);
  selection.welfare = best->value;
  selection.state = best->state;
  return selection;
}

absl::StatusOr<DpSolution> DpSolve(const Instance& instance,
                                   const DpOptions& options) {
  absl::StatusOr<DpSelection> selection = DpSelect(instance, options);
  if (!selection.ok()) return selection.status();
  absl::StatusOr<LdfOutcome> outcome = LdfSchedule(instance, selection->subset);
  if (!outcome.ok()) return outcome.status();
  if (!outcome->feasible) {
    return absl::InternalError("LDF rejected the subset chosen by the DP");
  }
  if (instance.tasks.empty()) {
    outcome->matrix = AllocationMatrix(0, 0, instance.machines);
  }
  return DpSolution{*std::move(selection), std::move(outcome->matrix)};
}

}  // namespace malleable
