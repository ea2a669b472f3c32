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

#ifndef MALLEABLE_CLI_H_
#define MALLEABLE_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "malleable/model.h"

namespace malleable {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternal = 3;

// `args` excludes the program name. Results go to `out` unless -o is given;
// diagnostics go to `err`.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

struct CheckOutcome {
  enum class Verdict { kPass, kFail, kSkip };
  std::string name;
  Verdict verdict;
  std::string detail;
};

// Oracle cross-checks on one instance. Exhaustive checks are skipped above
// `max_exhaustive_tasks` tasks.
std::vector<CheckOutcome> RunVerification(const Instance& instance,
                                          int max_exhaustive_tasks = 16);

// Random instance with deadlines <= 20 and parallelism <= 4, with the
// machine count set to the smallest one that fits every task.
Instance BenchInstance(int num_tasks, uint64_t seed);

struct BenchRow {
  int num_tasks;
  double ldf_seconds;     // fastest of the repeats
  double greedy_seconds;  // fastest of the repeats
};

std::vector<BenchRow> RunBench(const std::vector<int>& sizes, int repeats,
                               uint64_t seed);

}  // namespace malleable

#endif  // MALLEABLE_CLI_H_
