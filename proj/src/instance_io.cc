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

#include "malleable/instance_io.h"

#include <fstream>
#include <limits>
#include <sstream>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "nlohmann/json.hpp"

namespace malleable {
namespace {

using Json = nlohmann::ordered_json;

// Collects every problem of a document before failing.
class Errors {
 public:
  void Add(std::string path, absl::string_view message) {
    lines_.push_back(absl::StrCat(path, ": ", message));
  }
  bool empty() const { return lines_.empty(); }
  absl::Status ToStatus(absl::string_view what) const {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid ", what, ": ", absl::StrJoin(lines_, "; ")));
  }

 private:
  std::vector<std::string> lines_;
};

absl::StatusOr<Json> ParseJson(absl::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed JSON: ", e.what()));
  }
}

void RejectUnknown(const Json& object,
                   std::initializer_list<absl::string_view> known,
                   const std::string& path, Errors& errors) {
  for (const auto& [key, unused] : object.items()) {
    bool found = false;
    for (absl::string_view k : known) found = found || k == key;
    if (!found) errors.Add(absl::StrCat(path, ".", key), "unknown field");
  }
}

template <typename T>
std::optional<T> ReadInt(const Json& object, absl::string_view key,
                         const std::string& path, Errors& errors) {
  const std::string field = absl::StrCat(path, path.empty() ? "" : ".", key);
  auto it = object.find(std::string(key));
  if (it == object.end()) {
    errors.Add(field, "missing");
    return std::nullopt;
  }
  if (!it->is_number_integer()) {
    errors.Add(field, "expected an integer");
    return std::nullopt;
  }
  if (it->is_number_unsigned()) {
    const uint64_t raw = it->get<uint64_t>();
    if (raw > static_cast<uint64_t>(std::numeric_limits<T>::max())) {
      errors.Add(field, "out of range");
      return std::nullopt;
    }
    return static_cast<T>(raw);
  }
  const int64_t raw = it->get<int64_t>();
  if (raw < std::numeric_limits<T>::min() ||
      raw > std::numeric_limits<T>::max()) {
    errors.Add(field, "out of range");
    return std::nullopt;
  }
  return static_cast<T>(raw);
}

std::optional<std::string> ReadString(const Json& object, absl::string_view key,
                                      const std::string& path, Errors& errors) {
  const std::string field = absl::StrCat(path, path.empty() ? "" : ".", key);
  auto it = object.find(std::string(key));
  if (it == object.end()) {
    errors.Add(field, "missing");
    return std::nullopt;
  }
  if (!it->is_string()) {
    errors.Add(field, "expected a string");
    return std::nullopt;
  }
  return it->get<std::string>();
}

std::optional<Rational> ReadDecimal(const Json& object, absl::string_view key,
                                    const std::string& path, Errors& errors) {
  std::optional<std::string> text = ReadString(object, key, path, errors);
  if (!text.has_value()) return std::nullopt;
  absl::StatusOr<Rational> value = ParseDecimal(*text);
  if (!value.ok()) {
    errors.Add(absl::StrCat(path, path.empty() ? "" : ".", key),
               value.status().message());
    return std::nullopt;
  }
  return *value;
}

std::optional<Rational> ReadRationalText(const Json& object,
                                         absl::string_view key,
                                         const std::string& path,
                                         Errors& errors) {
  std::optional<std::string> text = ReadString(object, key, path, errors);
  if (!text.has_value()) return std::nullopt;
  absl::StatusOr<Rational> value = ParseRationalText(*text);
  if (!value.ok()) {
    errors.Add(absl::StrCat(path, path.empty() ? "" : ".", key),
               value.status().message());
    return std::nullopt;
  }
  return *value;
}

template <typename T>
std::vector<T> ReadIntArray(const Json& node, const std::string& path,
                            Errors& errors) {
  std::vector<T> out;
  if (!node.is_array()) {
    errors.Add(path, "expected an array");
    return out;
  }
  for (size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number_integer()) {
      errors.Add(absl::StrCat(path, "[", i, "]"), "expected an integer");
      continue;
    }
    out.push_back(node[i].get<T>());
  }
  return out;
}

std::vector<std::string> ReadIdArray(const Json& node, const std::string& path,
                                     Errors& errors) {
  std::vector<std::string> out;
  if (!node.is_array()) {
    errors.Add(path, "expected an array");
    return out;
  }
  for (size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_string()) {
      errors.Add(absl::StrCat(path, "[", i, "]"), "expected a string");
      continue;
    }
    out.push_back(node[i].get<std::string>());
  }
  return out;
}

std::string Dump(const Json& json) { return json.dump(2) + "\n"; }

std::vector<std::string> Ids(const Instance& instance,
                             const std::vector<int>& indices) {
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (int i : indices) ids.push_back(instance.tasks[i].id);
  return ids;
}

}  // namespace

absl::StatusOr<Instance> ParseInstanceJson(absl::string_view text) {
  absl::StatusOr<Json> json = ParseJson(text);
  if (!json.ok()) return json.status();
  Errors errors;
  if (!json->is_object()) {
    errors.Add("$", "expected an object");
    return errors.ToStatus("instance");
  }
  RejectUnknown(*json, {"machines", "tasks"}, "$", errors);
  Instance instance;
  if (std::optional<int64_t> c =
          ReadInt<int64_t>(*json, "machines", "", errors)) {
    instance.machines = *c;
  }
  auto tasks = json->find("tasks");
  if (tasks == json->end()) {
    errors.Add("tasks", "missing");
  } else if (!tasks->is_array()) {
    errors.Add("tasks", "expected an array");
  } else {
    for (size_t i = 0; i < tasks->size(); ++i) {
      const Json& node = (*tasks)[i];
      const std::string path = absl::StrCat("tasks[", i, "]");
      if (!node.is_object()) {
        errors.Add(path, "expected an object");
        continue;
      }
      RejectUnknown(node, {"id", "value", "demand", "deadline", "parallelism"},
                    path, errors);
      Task task;
      auto id = ReadString(node, "id", path, errors);
      auto value = ReadDecimal(node, "value", path, errors);
      auto demand = ReadInt<int64_t>(node, "demand", path, errors);
      auto deadline = ReadInt<int>(node, "deadline", path, errors);
      auto parallelism = ReadInt<int>(node, "parallelism", path, errors);
      if (id) task.id = *id;
      if (value) task.value = *value;
      if (demand) task.demand = *demand;
      if (deadline) task.deadline = *deadline;
      if (parallelism) task.parallelism = *parallelism;
      instance.tasks.push_back(std::move(task));
    }
  }
  if (!errors.empty()) return errors.ToStatus("instance");
  for (const Violation& v : ValidateInstance(instance)) {
    if (v.kind == ViolationKind::kInvalid) errors.Add(v.path, v.message);
  }
  if (!errors.empty()) return errors.ToStatus("instance");
  return instance;
}

absl::StatusOr<Instance> ReadInstanceFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<Instance> instance = ParseInstanceJson(*text);
  if (!instance.ok()) {
    return absl::Status(instance.status().code(),
                        absl::StrCat(path, ": ", instance.status().message()));
  }
  return instance;
}

std::string InstanceToJson(const Instance& instance) {
  Json tasks = Json::array();
  for (const Task& task : instance.tasks) {
    tasks.push_back({{"id", task.id},
                     {"value", FormatDecimal(task.value)},
                     {"demand", task.demand},
                     {"deadline", task.deadline},
                     {"parallelism", task.parallelism}});
  }
  return Dump({{"machines", instance.machines}, {"tasks", std::move(tasks)}});
}

IdRows AllocationRows(const Instance& instance,
                      const AllocationMatrix& matrix) {
  IdRows rows;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    std::vector<int> row(matrix.horizon(), 0);
    if (i < matrix.num_tasks()) {
      std::span<const int> cells = matrix.Row(i);
      row.assign(cells.begin(), cells.end());
    }
    rows.emplace_back(instance.tasks[i].id, std::move(row));
  }
  return rows;
}

std::vector<PhaseRecord> PhaseRecords(const Instance& instance,
                                      const PhaseLog& log) {
  std::vector<PhaseRecord> records;
  for (const Phase& phase : log.phases) {
    records.push_back({Ids(instance, phase.accepted),
                       Ids(instance, phase.rejected),
                       phase.max_rejected_deadline, phase.max_accepted_deadline,
                       phase.threshold});
  }
  return records;
}

CapacityRecord ToCapacityRecord(const CapacityReport& report) {
  return {report.lambda, report.lambda_capped, report.residual};
}

std::string ResultToJson(const ResultFile& result) {
  Json json;
  json["command"] = result.command;
  json["feasible"] = result.feasible;
  json["welfare"] = FormatDecimal(result.welfare);
  if (result.objective.has_value()) {
    json["objective"] = FormatDecimal(*result.objective);
  }
  if (result.machines.has_value()) json["machines"] = *result.machines;
  Json allocation = Json::object();
  for (const auto& [id, row] : result.allocation) allocation[id] = row;
  json["allocation"] = std::move(allocation);
  if (result.phases.has_value()) {
    Json phases = Json::array();
    for (const PhaseRecord& phase : *result.phases) {
      Json node = {{"accepted", phase.accepted},
                   {"rejected", phase.rejected},
                   {"c", phase.max_rejected_deadline},
                   {"c_prime", phase.max_accepted_deadline}};
      node["threshold"] =
          phase.threshold.has_value() ? Json(*phase.threshold) : Json(nullptr);
      phases.push_back(std::move(node));
    }
    json["phases"] = {{"K", result.phases->size()},
                      {"phases", std::move(phases)}};
  }
  if (result.capacity_report.has_value()) {
    json["capacity_report"] = {
        {"lambda", result.capacity_report->lambda},
        {"lambda_capped", result.capacity_report->lambda_capped},
        {"residual", result.capacity_report->residual}};
  }
  if (result.deadlines.has_value()) {
    Json deadlines = Json::object();
    for (const auto& [id, d] : *result.deadlines) deadlines[id] = d;
    json["deadlines"] = std::move(deadlines);
  }
  return Dump(json);
}

absl::StatusOr<ResultFile> ParseResultJson(absl::string_view text) {
  absl::StatusOr<Json> json = ParseJson(text);
  if (!json.ok()) return json.status();
  Errors errors;
  if (!json->is_object()) {
    errors.Add("$", "expected an object");
    return errors.ToStatus("result");
  }
  RejectUnknown(*json,
                {"command", "feasible", "welfare", "objective", "machines",
                 "allocation", "phases", "capacity_report", "deadlines"},
                "$", errors);
  ResultFile result;
  if (auto command = ReadString(*json, "command", "", errors)) {
    result.command = *command;
  }
  if (auto it = json->find("feasible");
      it == json->end() || !it->is_boolean()) {
    errors.Add("feasible", "expected a boolean");
  } else {
    result.feasible = it->get<bool>();
  }
  if (auto welfare = ReadRationalText(*json, "welfare", "", errors)) {
    result.welfare = *welfare;
  }
  if (json->contains("objective")) {
    result.objective = ReadRationalText(*json, "objective", "", errors);
  }
  if (json->contains("machines")) {
    result.machines = ReadInt<int64_t>(*json, "machines", "", errors);
  }
  if (auto it = json->find("allocation");
      it == json->end() || !it->is_object()) {
    errors.Add("allocation", "expected an object");
  } else {
    for (const auto& [id, row] : it->items()) {
      result.allocation.emplace_back(
          id, ReadIntArray<int>(row, absl::StrCat("allocation.", id), errors));
    }
  }
  if (auto it = json->find("phases"); it != json->end()) {
    const Json& list = it->contains("phases") ? (*it)["phases"] : Json();
    if (!list.is_array()) {
      errors.Add("phases.phases", "expected an array");
    } else {
      result.phases.emplace();
      for (size_t m = 0; m < list.size(); ++m) {
        const Json& node = list[m];
        const std::string path = absl::StrCat("phases.phases[", m, "]");
        PhaseRecord phase;
        phase.accepted = ReadIdArray(node.value("accepted", Json()),
                                     path + ".accepted", errors);
        phase.rejected = ReadIdArray(node.value("rejected", Json()),
                                     path + ".rejected", errors);
        phase.max_rejected_deadline =
            ReadInt<int>(node, "c", path, errors).value_or(0);
        phase.max_accepted_deadline =
            ReadInt<int>(node, "c_prime", path, errors).value_or(0);
        if (node.contains("threshold") && !node["threshold"].is_null()) {
          phase.threshold = ReadInt<int>(node, "threshold", path, errors);
        }
        result.phases->push_back(std::move(phase));
      }
    }
  }
  if (auto it = json->find("capacity_report"); it != json->end()) {
    CapacityRecord record;
    record.lambda = ReadIntArray<int64_t>(it->value("lambda", Json()),
                                          "capacity_report.lambda", errors);
    record.lambda_capped =
        ReadIntArray<int64_t>(it->value("lambda_capped", Json()),
                              "capacity_report.lambda_capped", errors);
    record.residual = ReadIntArray<int64_t>(it->value("residual", Json()),
                                            "capacity_report.residual", errors);
    result.capacity_report = std::move(record);
  }
  if (auto it = json->find("deadlines"); it != json->end()) {
    result.deadlines.emplace();
    for (const auto& [id, d] : it->items()) {
      if (!d.is_number_integer()) {
        errors.Add(absl::StrCat("deadlines.", id), "expected an integer");
        continue;
      }
      result.deadlines->emplace_back(id, d.get<int>());
    }
  }
  if (!errors.empty()) return errors.ToStatus("result");
  return result;
}

absl::StatusOr<AllocationMatrix> ResultMatrix(const Instance& instance,
                                              const ResultFile& result) {
  int horizon = 0;
  for (const auto& [id, row] : result.allocation) {
    horizon = std::max(horizon, static_cast<int>(row.size()));
  }
  AllocationMatrix matrix(instance.num_tasks(), horizon, instance.machines);
  absl::flat_hash_set<std::string> seen;
  for (const auto& [id, row] : result.allocation) {
    std::optional<int> index = instance.IndexOf(id);
    if (!index.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("allocation names unknown task ", id));
    }
    if (!seen.insert(id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("allocation lists task ", id, " twice"));
    }
    for (size_t t = 0; t < row.size(); ++t) {
      if (row[t] < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("negative allocation for task ", id));
      }
      if (row[t] != 0) matrix.Set(*index, static_cast<int>(t) + 1, row[t]);
    }
  }
  return matrix;
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, absl::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  out << text;
  if (!out.flush())
    return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

}  // namespace malleable
