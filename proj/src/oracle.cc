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

#include "malleable/oracle.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/graph/adjacency_list.hpp"
#include "boost/graph/push_relabel_max_flow.hpp"
#include "malleable/capacity.h"

namespace malleable {
namespace {

using Traits =
    boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, int64_t,
                    boost::property<boost::edge_residual_capacity_t, int64_t,
                                    boost::property<boost::edge_reverse_t,
                                                    Traits::edge_descriptor>>>>;
using Edge = Traits::edge_descriptor;

class FlowNetwork {
 public:
  explicit FlowNetwork(int num_vertices) : graph_(num_vertices) {}

  Edge AddArc(int from, int to, int64_t capacity) {
    auto capacity_map = boost::get(boost::edge_capacity, graph_);
    auto reverse_map = boost::get(boost::edge_reverse, graph_);
    Edge forward = boost::add_edge(from, to, graph_).first;
    Edge backward = boost::add_edge(to, from, graph_).first;
    capacity_map[forward] = capacity;
    capacity_map[backward] = 0;
    reverse_map[forward] = backward;
    reverse_map[backward] = forward;
    return forward;
  }

  int64_t Solve(int source, int sink) {
    return boost::push_relabel_max_flow(graph_, source, sink);
  }

  int64_t FlowOn(Edge edge) const {
    return boost::get(boost::edge_capacity, graph_, edge) -
           boost::get(boost::edge_residual_capacity, graph_, edge);
  }

 private:
  Graph graph_;
};

bool AllPositive(const Instance& instance) {
  return std::all_of(instance.tasks.begin(), instance.tasks.end(),
                     [](const Task& task) { return task.value > 0; });
}

}  // namespace

FlowResult FlowFeasible(const Instance& instance, std::span<const int> subset,
                        int64_t machines, const FlowOptions& options) {
  const std::vector<int> deadlines =
      options.deadlines.empty() ? TaskDeadlines(instance) : options.deadlines;
  int horizon = 0;
  for (int d : deadlines) horizon = std::max(horizon, d);
  int first = 1;
  int last = horizon;
  if (options.window.has_value()) {
    first = std::max(first, options.window->first);
    last = std::min(last, options.window->second);
  }

  const int n = static_cast<int>(subset.size());
  const int num_slots = std::max(0, last - first + 1);
  // 0: source, 1: sink, 2..n+1: tasks, n+2..: slots first..last.
  const int source = 0;
  const int sink = 1;
  auto task_vertex = [](int k) { return 2 + k; };
  auto slot_vertex = [&](int t) { return 2 + n + (t - first); };
  FlowNetwork network(2 + n + num_slots);

  FlowResult result;
  result.matrix = AllocationMatrix(instance.num_tasks(), horizon, machines);
  std::vector<std::vector<std::pair<int, Edge>>> slot_arcs(n);
  for (int k = 0; k < n; ++k) {
    const Task& task = instance.tasks[subset[k]];
    result.demand += task.demand;
    network.AddArc(source, task_vertex(k), task.demand);
    for (int t = first; t <= std::min(last, deadlines[subset[k]]); ++t) {
      slot_arcs[k].emplace_back(
          t, network.AddArc(task_vertex(k), slot_vertex(t), task.parallelism));
    }
  }
  for (int t = first; t <= last; ++t) {
    network.AddArc(slot_vertex(t), sink, machines);
  }

  result.flow = num_slots > 0 || n > 0 ? network.Solve(source, sink) : 0;
  result.feasible = result.flow == result.demand;
  for (int k = 0; k < n; ++k) {
    for (const auto& [t, edge] : slot_arcs[k]) {
      const int64_t amount = network.FlowOn(edge);
      if (amount > 0) {
        result.matrix.Set(subset[k], t, static_cast<int>(amount));
      }
    }
  }
  return result;
}

absl::StatusOr<WelfareOptimum> ExhaustiveWelfare(const Instance& instance,
                                                 int max_tasks) {
  const int n = instance.num_tasks();
  if (n > max_tasks) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exhaustive search refuses ", n, " tasks (limit ", max_tasks, ")"));
  }
  WelfareOptimum best{Rational(0), {}};
  for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
    Rational value = 0;
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (mask & (uint32_t{1} << i)) {
        value += instance.tasks[i].value;
        subset.push_back(i);
      }
    }
    if (value <= best.welfare) continue;
    if (FlowFeasible(instance, subset, instance.machines).feasible) {
      best = {value, std::move(subset)};
    }
  }
  return best;
}

absl::StatusOr<int64_t> ScanMachineMin(const Instance& instance) {
  int64_t lower = 1;
  int64_t upper = 0;
  for (const Task& task : instance.tasks) {
    if (DeriveMetrics(task).min_length > task.deadline) {
      return absl::FailedPreconditionError(
          absl::StrCat("infeasible at any machine count: task ", task.id));
    }
    lower = std::max(lower, (task.demand + task.deadline - 1) / task.deadline);
    upper += task.parallelism;
  }
  if (instance.tasks.empty()) return 0;
  const std::vector<int> all = AllIndices(instance.num_tasks());
  for (int64_t c = lower; c <= std::max(lower, upper); ++c) {
    if (FlowFeasible(instance, all, c).feasible) return c;
  }
  return absl::InternalError("no machine count up to sum of parallelism fits");
}

absl::StatusOr<Rational> ScanMaxWeighted(const Instance& instance,
                                         WeightedMode mode) {
  if (!AllPositive(instance)) {
    return absl::InvalidArgumentError(
        "weighted objectives need every value > 0");
  }
  const std::vector<int> all = AllIndices(instance.num_tasks());
  for (const Rational& candidate : ObjectiveCandidates(instance, mode)) {
    std::optional<std::vector<int>> deadlines =
        DeadlinesAt(instance, mode, candidate);
    if (!deadlines.has_value()) continue;
    FlowOptions options;
    options.deadlines = *std::move(deadlines);
    if (FlowFeasible(instance, all, instance.machines, options).feasible) {
      return candidate;
    }
  }
  return absl::InternalError("no candidate objective value is feasible");
}

}  // namespace malleable
