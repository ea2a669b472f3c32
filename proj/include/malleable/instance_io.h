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

#ifndef MALLEABLE_INSTANCE_IO_H_
#define MALLEABLE_INSTANCE_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "malleable/capacity.h"
#include "malleable/greedy.h"
#include "malleable/model.h"
#include "malleable/rational.h"

namespace malleable {

// Instance document:
//   {"machines": C, "tasks": [{"id": "a", "value": "1.5", "demand": 4,
//                              "deadline": 2, "parallelism": 2}, ...]}
// Values are decimal strings with at most 9 fractional digits. Unknown
// fields are errors. Individually infeasible tasks are accepted.
absl::StatusOr<Instance> ParseInstanceJson(absl::string_view text);
absl::StatusOr<Instance> ReadInstanceFile(const std::string& path);
std::string InstanceToJson(const Instance& instance);

struct PhaseRecord {
  std::vector<std::string> accepted;
  std::vector<std::string> rejected;
  int max_rejected_deadline = 0;
  int max_accepted_deadline = 0;
  std::optional<int> threshold;

  friend bool operator==(const PhaseRecord&, const PhaseRecord&) = default;
};

struct CapacityRecord {
  std::vector<int64_t> lambda;
  std::vector<int64_t> lambda_capped;
  std::vector<int64_t> residual;

  friend bool operator==(const CapacityRecord&,
                         const CapacityRecord&) = default;
};

using IdRows = std::vector<std::pair<std::string, std::vector<int>>>;

// Result document; optional members are omitted when unset.
struct ResultFile {
  std::string command;
  bool feasible = false;
  Rational welfare;
  std::optional<Rational> objective;
  std::optional<int64_t> machines;
  IdRows allocation;  // task id -> y(1) .. y(d), in instance order
  std::optional<std::vector<PhaseRecord>> phases;
  std::optional<CapacityRecord> capacity_report;
  // Deadlines in force when they differ from the instance's.
  std::optional<std::vector<std::pair<std::string, int>>> deadlines;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

IdRows AllocationRows(const Instance& instance, const AllocationMatrix& matrix);
std::vector<PhaseRecord> PhaseRecords(const Instance& instance,
                                      const PhaseLog& log);
CapacityRecord ToCapacityRecord(const CapacityReport& report);

std::string ResultToJson(const ResultFile& result);
absl::StatusOr<ResultFile> ParseResultJson(absl::string_view text);

// Rebuilds the allocation matrix of a result against its instance.
absl::StatusOr<AllocationMatrix> ResultMatrix(const Instance& instance,
                                              const ResultFile& result);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, absl::string_view text);

}  // namespace malleable

#endif  // MALLEABLE_INSTANCE_IO_H_
