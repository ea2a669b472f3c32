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

#include "malleable/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "malleable/capacity.h"
#include "malleable/dp.h"
#include "malleable/generators.h"
#include "malleable/greedy.h"
#include "malleable/instance_io.h"
#include "malleable/ldf.h"
#include "malleable/objectives.h"
#include "malleable/oracle.h"

namespace malleable {
namespace {

struct Flags {
  std::string input;
  std::string output;
  std::string trace;
  std::string round_deadlines;
  std::optional<int64_t> machines;
};

int ExitFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kResourceExhausted:
    case absl::StatusCode::kPermissionDenied:
      return kExitInputError;
    default:
      return kExitInternal;
  }
}

int Report(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return ExitFor(status);
}

absl::StatusOr<std::vector<int>> ParseIntList(absl::string_view text) {
  std::vector<int> values;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    int value = 0;
    if (!absl::SimpleAtoi(part, &value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("not an integer list: \"", text, "\""));
    }
    values.push_back(value);
  }
  if (values.empty()) {
    return absl::InvalidArgumentError("empty integer list");
  }
  return values;
}

// Rounds every deadline down to the largest listed value not above it.
absl::Status RoundDeadlines(absl::string_view list, Instance& instance) {
  absl::StatusOr<std::vector<int>> taus = ParseIntList(list);
  if (!taus.ok()) return taus.status();
  std::sort(taus->begin(), taus->end());
  for (Task& task : instance.tasks) {
    auto it = std::upper_bound(taus->begin(), taus->end(), task.deadline);
    if (it == taus->begin() || *std::prev(it) < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "task ", task.id, ": no positive rounding target at or below ",
          task.deadline));
    }
    task.deadline = *std::prev(it);
  }
  return absl::OkStatus();
}

absl::StatusOr<Instance> LoadInstance(const Flags& flags) {
  absl::StatusOr<Instance> instance = ReadInstanceFile(flags.input);
  if (!instance.ok()) return instance.status();
  if (flags.machines.has_value()) {
    if (*flags.machines < 1) {
      return absl::InvalidArgumentError("--machines must be >= 1");
    }
    instance->machines = *flags.machines;
  }
  if (!flags.round_deadlines.empty()) {
    if (absl::Status s = RoundDeadlines(flags.round_deadlines, *instance);
        !s.ok()) {
      return s;
    }
  }
  return instance;
}

absl::Status Emit(const Flags& flags, absl::string_view text,
                  std::ostream& out) {
  if (flags.output.empty()) {
    out << text;
    return absl::OkStatus();
  }
  return WriteTextFile(flags.output, text);
}

// Streams trace events as JSON lines when --trace is set.
class TraceFile {
 public:
  TraceFile(const std::string& path, const Instance& instance)
      : instance_(instance) {
    if (!path.empty()) stream_.open(path, std::ios::trunc);
  }
  bool failed() const { return stream_.is_open() && !stream_.good(); }
  TraceSink Sink() {
    if (!stream_.is_open()) return nullptr;
    return [this](const TraceEvent& event, const AllocationMatrix&) {
      stream_ << TraceEventToJson(event, instance_) << "\n";
    };
  }

 private:
  const Instance& instance_;
  std::ofstream stream_;
};

// Rounded deadlines are reported since they differ from the input file.
ResultFile BaseResult(const Flags& flags, std::string command,
                      const Instance& instance,
                      const AllocationMatrix& matrix) {
  ResultFile result;
  result.command = std::move(command);
  result.allocation = AllocationRows(instance, matrix);
  result.welfare = AllocatedWelfare(instance, matrix);
  if (!flags.round_deadlines.empty()) {
    result.deadlines.emplace();
    for (const Task& task : instance.tasks) {
      result.deadlines->emplace_back(task.id, task.deadline);
    }
  }
  return result;
}

int Finish(const Flags& flags, const ResultFile& result, int code,
           std::ostream& out, std::ostream& err) {
  if (absl::Status s = Emit(flags, ResultToJson(result), out); !s.ok()) {
    return Report(err, s);
  }
  return code;
}

int RunFeasible(const Flags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  absl::StatusOr<CapacityReport> report = InstanceBoundaryCondition(*instance);
  if (!report.ok()) return Report(err, report.status());
  AllocationMatrix matrix;
  if (report->feasible) {
    absl::StatusOr<LdfOutcome> outcome = LdfSchedule(*instance);
    if (!outcome.ok()) return Report(err, outcome.status());
    matrix = std::move(outcome->matrix);
  }
  ResultFile result = BaseResult(flags, "feasible", *instance, matrix);
  result.feasible = report->feasible;
  result.capacity_report = ToCapacityRecord(*report);
  return Finish(flags, result, report->feasible ? kExitOk : kExitInfeasible,
                out, err);
}

int RunLdf(const Flags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  TraceFile trace(flags.trace, *instance);
  LdfOptions options;
  options.trace = trace.Sink();
  absl::StatusOr<LdfOutcome> outcome = LdfSchedule(*instance, options);
  if (!outcome.ok()) return Report(err, outcome.status());
  if (trace.failed()) {
    return Report(err, absl::PermissionDeniedError("cannot write trace"));
  }
  ResultFile result = BaseResult(flags, "ldf", *instance, outcome->matrix);
  result.feasible = outcome->feasible;
  result.capacity_report = ToCapacityRecord(outcome->report);
  if (!outcome->feasible && outcome->failed_task.has_value()) {
    err << "infeasible: task " << instance->tasks[*outcome->failed_task].id
        << " cannot be added\n";
  }
  return Finish(flags, result, outcome->feasible ? kExitOk : kExitInfeasible,
                out, err);
}

int RunGreedy(const Flags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  TraceFile trace(flags.trace, *instance);
  GreedyOptions options;
  options.trace = trace.Sink();
  absl::StatusOr<GreedyResult> greedy = GreedyRlm(*instance, options);
  if (!greedy.ok()) return Report(err, greedy.status());
  ResultFile result = BaseResult(flags, "greedy", *instance, greedy->matrix);
  result.feasible = true;
  result.phases = PhaseRecords(*instance, greedy->phases);
  if (result.welfare != greedy->welfare) {
    return Report(err, absl::InternalError("greedy welfare mismatch"));
  }
  return Finish(flags, result, kExitOk, out, err);
}

int RunDp(const Flags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  absl::StatusOr<DpSolution> solution = DpSolve(*instance);
  if (!solution.ok()) return Report(err, solution.status());
  ResultFile result = BaseResult(flags, "dp", *instance, solution->matrix);
  result.feasible = true;
  if (result.welfare != solution->selection.welfare) {
    return Report(err, absl::InternalError("dp welfare mismatch"));
  }
  return Finish(flags, result, kExitOk, out, err);
}

int RunMinMachines(const Flags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  absl::StatusOr<MachineMinResult> min = MinimizeMachines(*instance);
  if (absl::IsFailedPrecondition(min.status())) {
    err << min.status().message() << "\n";
    ResultFile result = BaseResult(flags, "minmachines", *instance, {});
    return Finish(flags, result, kExitInfeasible, out, err);
  }
  if (!min.ok()) return Report(err, min.status());
  Instance scheduled = *instance;
  scheduled.machines = min->machines;
  ResultFile result = BaseResult(flags, "minmachines", scheduled, min->matrix);
  result.feasible = true;
  result.machines = min->machines;
  return Finish(flags, result, kExitOk, out, err);
}

int RunMinLateness(const Flags& flags, const std::string& mode_name,
                   std::ostream& out, std::ostream& err) {
  std::optional<WeightedMode> mode = ParseWeightedMode(mode_name);
  if (!mode.has_value()) {
    return Report(err, absl::InvalidArgumentError(
                           absl::StrCat("unknown mode ", mode_name)));
  }
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  absl::StatusOr<WeightedResult> weighted =
      MinimizeMaxWeighted(*instance, *mode);
  if (!weighted.ok()) return Report(err, weighted.status());
  ResultFile result =
      BaseResult(flags, "minlateness", *instance, weighted->matrix);
  result.feasible = true;
  result.objective = weighted->objective;
  result.deadlines.emplace();
  for (int i = 0; i < instance->num_tasks(); ++i) {
    result.deadlines->emplace_back(instance->tasks[i].id,
                                   weighted->deadlines[i]);
  }
  return Finish(flags, result, kExitOk, out, err);
}

struct GenFlags {
  std::string family = "random";
  uint64_t seed = 1;
  int tasks = 6;
  int max_deadline = 6;
  int max_parallelism = 3;
  int min_value = 1;
  int max_value = 10;
  std::string min_slackness;
  int distinct_deadlines = 0;
  int short_deadline = 2;
  int long_deadline = 4;
  std::string epsilon = "0.1";
};

int RunGen(const Flags& flags, const GenFlags& gen, std::ostream& out,
           std::ostream& err) {
  absl::StatusOr<Instance> instance;
  if (gen.family == "random") {
    RandomParams params;
    params.num_tasks = gen.tasks;
    params.machines = flags.machines.value_or(2);
    params.max_deadline = gen.max_deadline;
    params.max_parallelism = gen.max_parallelism;
    params.min_value = gen.min_value;
    params.max_value = gen.max_value;
    if (!gen.min_slackness.empty()) {
      absl::StatusOr<Rational> s = ParseDecimal(gen.min_slackness);
      if (!s.ok()) return Report(err, s.status());
      params.min_slackness = *s;
    }
    if (gen.distinct_deadlines > 0) {
      params.max_distinct_deadlines = gen.distinct_deadlines;
    }
    instance = GenerateRandom(params, gen.seed);
  } else if (gen.family == "adversarial") {
    AdversarialParams params;
    params.machines = flags.machines.value_or(2);
    params.short_deadline = gen.short_deadline;
    params.long_deadline = gen.long_deadline;
    absl::StatusOr<Rational> eps = ParseDecimal(gen.epsilon);
    if (!eps.ok()) return Report(err, eps.status());
    params.epsilon = *eps;
    instance = GenerateAdversarial(params);
  } else {
    return Report(err, absl::InvalidArgumentError(
                           absl::StrCat("unknown family ", gen.family)));
  }
  if (!instance.ok()) return Report(err, instance.status());
  if (absl::Status s = Emit(flags, InstanceToJson(*instance), out); !s.ok()) {
    return Report(err, s);
  }
  return kExitOk;
}

int RunVerify(const Flags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> instance = LoadInstance(flags);
  if (!instance.ok()) return Report(err, instance.status());
  std::string text;
  bool all_pass = true;
  for (const CheckOutcome& check : RunVerification(*instance)) {
    absl::string_view verdict = "PASS";
    if (check.verdict == CheckOutcome::Verdict::kFail) {
      verdict = "FAIL";
      all_pass = false;
    } else if (check.verdict == CheckOutcome::Verdict::kSkip) {
      verdict = "SKIP";
    }
    absl::StrAppend(&text, verdict, " ", check.name,
                    check.detail.empty() ? "" : ": ", check.detail, "\n");
  }
  if (absl::Status s = Emit(flags, text, out); !s.ok()) return Report(err, s);
  return all_pass ? kExitOk : kExitInternal;
}

int RunBenchCommand(const Flags& flags, const std::string& sizes, int repeats,
                    uint64_t seed, std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::vector<int>> ns = ParseIntList(sizes);
  if (!ns.ok()) return Report(err, ns.status());
  if (repeats < 1 ||
      std::any_of(ns->begin(), ns->end(), [](int n) { return n < 1; })) {
    return Report(
        err, absl::InvalidArgumentError("sizes and repeats must be positive"));
  }
  std::string text =
      absl::StrFormat("%8s %12s %12s\n", "n", "ldf_s", "greedy_s");
  for (const BenchRow& row : RunBench(*ns, repeats, seed)) {
    absl::StrAppendFormat(&text, "%8d %12.6f %12.6f\n", row.num_tasks,
                          row.ldf_seconds, row.greedy_seconds);
  }
  if (absl::Status s = Emit(flags, text, out); !s.ok()) return Report(err, s);
  return kExitOk;
}

void AddIo(CLI::App* sub, Flags& flags, bool needs_input) {
  CLI::Option* input =
      sub->add_option("-i,--input", flags.input, "Instance JSON file");
  if (needs_input) input->required();
  sub->add_option("-o,--output", flags.output,
                  "Write the result here instead of stdout");
  sub->add_option("--machines", flags.machines, "Override the machine count");
  sub->add_option(
      "--round-deadlines", flags.round_deadlines,
      "Round each deadline down to one of these values, e.g. 2,4,8");
}

CheckOutcome Check(std::string name, bool ok, std::string detail = "") {
  return {std::move(name),
          ok ? CheckOutcome::Verdict::kPass : CheckOutcome::Verdict::kFail,
          std::move(detail)};
}

CheckOutcome Skip(std::string name, std::string reason) {
  return {std::move(name), CheckOutcome::Verdict::kSkip, std::move(reason)};
}

CheckOutcome Broken(std::string name, const absl::Status& status) {
  return {std::move(name), CheckOutcome::Verdict::kFail,
          std::string(status.message())};
}

bool FullyAllocated(const Instance& instance, const AllocationMatrix& matrix,
                    std::span<const int> subset) {
  for (int i : subset) {
    if (matrix.Total(i) != instance.tasks[i].demand) return false;
  }
  return true;
}

}  // namespace

std::vector<CheckOutcome> RunVerification(const Instance& instance,
                                          int max_exhaustive_tasks) {
  std::vector<CheckOutcome> checks;
  const std::vector<int> all = AllIndices(instance.num_tasks());
  const bool small = instance.num_tasks() <= max_exhaustive_tasks;

  absl::StatusOr<CapacityReport> report = InstanceBoundaryCondition(instance);
  if (!report.ok()) {
    checks.push_back(Broken("boundary_condition", report.status()));
    return checks;
  }
  const FlowResult flow = FlowFeasible(instance, all, instance.machines);
  LdfOptions no_precheck;
  no_precheck.precheck = false;
  absl::StatusOr<LdfOutcome> ldf = LdfSchedule(instance, no_precheck);
  if (!ldf.ok()) {
    checks.push_back(Broken("ldf_boundary_flow_agree", ldf.status()));
  } else {
    checks.push_back(Check(
        "ldf_boundary_flow_agree",
        ldf->feasible == report->feasible && report->feasible == flow.feasible,
        absl::StrCat("ldf=", ldf->feasible, " boundary=", report->feasible,
                     " flow=", flow.feasible)));
    if (ldf->feasible) {
      const std::vector<std::string> problems =
          CheckAllocation(instance, ldf->matrix);
      checks.push_back(
          Check("ldf_schedule_valid",
                problems.empty() && FullyAllocated(instance, ldf->matrix, all),
                problems.empty() ? "" : problems.front()));
    }
  }
  checks.push_back(Check("flow_schedule_valid",
                         CheckAllocation(instance, flow.matrix).empty()));

  {
    const std::vector<int> deadlines = TaskDeadlines(instance);
    std::vector<int> taus = deadlines;
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    const int levels = static_cast<int>(taus.size());
    bool agree = true;
    std::string detail;
    for (int m = 0; m <= levels && !taus.empty(); ++m) {
      FlowOptions window;
      window.window = {(m == levels ? 0 : taus[levels - m - 1]) + 1,
                       taus.back()};
      const int64_t value =
          FlowFeasible(instance, all, instance.machines, window).flow;
      if (value != report->lambda_capped[m]) {
        agree = false;
        detail = absl::StrCat("m=", m, " flow=", value,
                              " lambda_capped=", report->lambda_capped[m]);
        break;
      }
    }
    checks.push_back(Check("suffix_capacity_equals_flow", agree, detail));
  }

  std::optional<WelfareOptimum> optimum;
  if (small) {
    absl::StatusOr<WelfareOptimum> exhaustive =
        ExhaustiveWelfare(instance, max_exhaustive_tasks);
    if (exhaustive.ok()) optimum = *exhaustive;
  }

  absl::StatusOr<DpSolution> dp = DpSolve(instance);
  if (absl::IsResourceExhausted(dp.status())) {
    checks.push_back(
        Skip("dp_equals_exhaustive", std::string(dp.status().message())));
  } else if (!dp.ok()) {
    checks.push_back(Broken("dp_equals_exhaustive", dp.status()));
  } else if (!optimum.has_value()) {
    checks.push_back(Skip("dp_equals_exhaustive", "too many tasks"));
  } else {
    checks.push_back(
        Check("dp_equals_exhaustive", dp->selection.welfare == optimum->welfare,
              absl::StrCat("dp=", FormatDecimal(dp->selection.welfare),
                           " exhaustive=", FormatDecimal(optimum->welfare))));
  }

  absl::StatusOr<GreedyResult> greedy = GreedyRlm(instance);
  if (!greedy.ok()) {
    checks.push_back(Broken("greedy_run", greedy.status()));
  } else {
    checks.push_back(Check(
        "greedy_schedule_valid",
        CheckAllocation(instance, greedy->matrix).empty() &&
            FullyAllocated(instance, greedy->matrix, greedy->accepted) &&
            AllocatedWelfare(instance, greedy->matrix) == greedy->welfare));
    checks.push_back(
        Check("greedy_feature2", CheckFeature2(instance, *greedy)));
    const bool slack = greedy->slackness.has_value() && *greedy->slackness > 1;
    if (!slack) {
      checks.push_back(Skip("greedy_feature1", "slackness <= 1"));
      checks.push_back(Skip("greedy_ratio_bound", "slackness <= 1"));
    } else {
      // The utilization bound needs every k_i <= C.
      const bool narrow = std::all_of(
          instance.tasks.begin(), instance.tasks.end(), [&](const Task& task) {
            return task.parallelism <= instance.machines;
          });
      checks.push_back(
          narrow ? Check("greedy_feature1",
                         CheckFeature1(instance, *greedy, greedy->ratio_bound))
                 : Skip("greedy_feature1", "some k_i > C"));
      if (!optimum.has_value()) {
        checks.push_back(Skip("greedy_ratio_bound", "too many tasks"));
      } else {
        checks.push_back(
            Check("greedy_ratio_bound",
                  greedy->welfare >= greedy->ratio_bound * optimum->welfare,
                  absl::StrCat("greedy=", FormatDecimal(greedy->welfare),
                               " opt=", FormatDecimal(optimum->welfare))));
      }
    }
  }

  absl::StatusOr<int64_t> scan = ScanMachineMin(instance);
  if (absl::IsFailedPrecondition(scan.status())) {
    checks.push_back(
        Skip("minmachines_equals_scan", std::string(scan.status().message())));
  } else {
    absl::StatusOr<MachineMinResult> min = MinimizeMachines(instance);
    if (!scan.ok() || !min.ok()) {
      checks.push_back(Broken("minmachines_equals_scan",
                              scan.ok() ? min.status() : scan.status()));
    } else {
      bool below_fails = true;
      if (min->machines > 1) {
        below_fails = !FlowFeasible(instance, all, min->machines - 1).feasible;
      }
      checks.push_back(Check(
          "minmachines_equals_scan", *scan == min->machines && below_fails,
          absl::StrCat("search=", min->machines, " scan=", *scan)));
    }
  }

  const bool positive =
      !instance.tasks.empty() &&
      std::all_of(instance.tasks.begin(), instance.tasks.end(),
                  [](const Task& task) { return task.value > 0; });
  for (WeightedMode mode :
       {WeightedMode::kLateness, WeightedMode::kCompletion}) {
    const std::string name =
        absl::StrCat("min_", WeightedModeName(mode), "_equals_scan");
    if (!positive) {
      checks.push_back(Skip(name, "needs tasks with positive values"));
      continue;
    }
    absl::StatusOr<WeightedResult> search = MinimizeMaxWeighted(instance, mode);
    absl::StatusOr<Rational> full = ScanMaxWeighted(instance, mode);
    if (!search.ok() || !full.ok()) {
      checks.push_back(
          Broken(name, search.ok() ? full.status() : search.status()));
      continue;
    }
    const std::optional<Rational> achieved =
        EvaluateSchedule(instance, search->matrix, mode);
    checks.push_back(
        Check(name,
              search->objective == *full && achieved.has_value() &&
                  *achieved <= search->objective,
              absl::StrCat("search=", FormatDecimal(search->objective),
                           " scan=", FormatDecimal(*full))));
  }
  return checks;
}

Instance BenchInstance(int num_tasks, uint64_t seed) {
  RandomParams params;
  params.num_tasks = num_tasks;
  params.machines = 1;
  params.max_deadline = 20;
  params.max_parallelism = 4;
  params.min_slackness = Rational(1);
  Instance instance = *GenerateRandom(params, seed);
  instance.machines = MinimizeMachines(instance)->machines;
  return instance;
}

std::vector<BenchRow> RunBench(const std::vector<int>& sizes, int repeats,
                               uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  auto best_of = [repeats](const std::function<void()>& work) {
    double best = 0;
    for (int r = 0; r < repeats; ++r) {
      const Clock::time_point start = Clock::now();
      work();
      const double elapsed =
          std::chrono::duration<double>(Clock::now() - start).count();
      best = r == 0 ? elapsed : std::min(best, elapsed);
    }
    return best;
  };
  std::vector<BenchRow> rows;
  for (int n : sizes) {
    const Instance instance = BenchInstance(n, seed + n);
    BenchRow row{n, 0, 0};
    row.ldf_seconds = best_of([&] { (void)LdfSchedule(instance); });
    row.greedy_seconds = best_of([&] { (void)GreedyRlm(instance); });
    rows.push_back(row);
  }
  return rows;
}

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Deadline scheduling of malleable batch tasks", "malleable"};
  app.require_subcommand(1, 1);
  Flags flags;

  CLI::App* feasible = app.add_subcommand(
      "feasible", "Boundary-condition test with its capacity report");
  AddIo(feasible, flags, true);
  CLI::App* ldf = app.add_subcommand("ldf", "Schedule every task with LDF");
  AddIo(ldf, flags, true);
  ldf->add_option("--trace", flags.trace,
                  "Write allocation steps as JSON lines");
  CLI::App* greedy =
      app.add_subcommand("greedy", "Approximate welfare with GreedyRLM");
  AddIo(greedy, flags, true);
  greedy->add_option("--trace", flags.trace,
                     "Write allocation steps as JSON lines");
  CLI::App* dp =
      app.add_subcommand("dp", "Exact welfare by dynamic programming");
  AddIo(dp, flags, true);
  CLI::App* minmachines =
      app.add_subcommand("minmachines", "Fewest machines that fit every task");
  AddIo(minmachines, flags, true);
  CLI::App* minlateness = app.add_subcommand(
      "minlateness", "Minimize the maximum weighted lateness or completion");
  AddIo(minlateness, flags, true);
  std::string mode = "lateness";
  minlateness->add_option("--mode", mode, "lateness or completion")
      ->check(CLI::IsMember({"lateness", "completion"}));

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  GenFlags gen_flags;
  AddIo(gen, flags, false);
  gen->add_option("--family", gen_flags.family, "random or adversarial")
      ->check(CLI::IsMember({"random", "adversarial"}));
  gen->add_option("--seed", gen_flags.seed, "Random seed");
  gen->add_option("--tasks", gen_flags.tasks, "Number of tasks (random)");
  gen->add_option("--d-max", gen_flags.max_deadline, "Largest deadline");
  gen->add_option("--k-max", gen_flags.max_parallelism, "Largest parallelism");
  gen->add_option("--v-min", gen_flags.min_value, "Smallest value");
  gen->add_option("--v-max", gen_flags.max_value, "Largest value");
  gen->add_option("--min-slackness", gen_flags.min_slackness,
                  "Lower bound on every task's slackness (decimal)");
  gen->add_option("--distinct-deadlines", gen_flags.distinct_deadlines,
                  "Cap on the number of distinct deadlines");
  gen->add_option("--d1", gen_flags.short_deadline,
                  "Short deadline (adversarial)");
  gen->add_option("--d2", gen_flags.long_deadline,
                  "Long deadline (adversarial)");
  gen->add_option("--epsilon", gen_flags.epsilon,
                  "Unit task bonus (adversarial, decimal)");

  CLI::App* verify =
      app.add_subcommand("verify", "Cross-check every solver against oracles");
  AddIo(verify, flags, true);

  CLI::App* bench =
      app.add_subcommand("bench", "Runtime table for ldf and greedy");
  std::string sizes = "200,400,800";
  int repeats = 3;
  uint64_t bench_seed = 1;
  bench->add_option("-o,--output", flags.output, "Write the table here");
  bench->add_option("--sizes", sizes, "Comma-separated task counts");
  bench->add_option("--repeats", repeats, "Runs per size; the fastest counts");
  bench->add_option("--seed", bench_seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*feasible) return RunFeasible(flags, out, err);
  if (*ldf) return RunLdf(flags, out, err);
  if (*greedy) return RunGreedy(flags, out, err);
  if (*dp) return RunDp(flags, out, err);
  if (*minmachines) return RunMinMachines(flags, out, err);
  if (*minlateness) return RunMinLateness(flags, mode, out, err);
  if (*gen) return RunGen(flags, gen_flags, out, err);
  if (*verify) return RunVerify(flags, out, err);
  if (*bench) {
    return RunBenchCommand(flags, sizes, repeats, bench_seed, out, err);
  }
  return kExitInputError;
}

}  // namespace malleable
