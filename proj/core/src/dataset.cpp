// Copyright 2026 The mms-toolkit Authors
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

#include "mms/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "nlohmann/json.hpp"

namespace mms
{
namespace
{

using nlohmann::json;

// Scenario files report problems as kSchemaViolation, prediction lines as
// kMalformedRecord; the shared helpers take the code from the call site.
[[noreturn]] void violation(
  const std::string & context, const std::string & message,
  ErrorCode code = ErrorCode::kSchemaViolation)
{
  throw Error(code, context + ": " + message);
}

const json & require_field(
  const json & object, const char * key, const std::string & context,
  ErrorCode code = ErrorCode::kSchemaViolation)
{
  if (!object.contains(key)) violation(context, std::string(key) + " is missing", code);
  return object.at(key);
}

std::string require_string(
  const json & object, const char * key, const std::string & context,
  ErrorCode code = ErrorCode::kSchemaViolation)
{
  const json & value = require_field(object, key, context, code);
  if (!value.is_string()) violation(context, std::string(key) + " must be a string", code);
  return value.get<std::string>();
}

std::string optional_string(
  const json & object, const char * key, const std::string & context,
  ErrorCode code = ErrorCode::kSchemaViolation)
{
  if (!object.contains(key)) return {};
  if (!object.at(key).is_string()) {
    violation(context, std::string(key) + " must be a string", code);
  }
  return object.at(key).get<std::string>();
}

void check_keys(
  const json & object, std::initializer_list<const char *> allowed, const std::string & context,
  ErrorCode code = ErrorCode::kSchemaViolation)
{
  for (const auto & item : object.items()) {
    const bool known = std::any_of(
      allowed.begin(), allowed.end(), [&](const char * key) { return item.key() == key; });
    if (!known) violation(context, "unknown field \"" + item.key() + "\"", code);
  }
}

std::vector<Waypoint> waypoints_from_json(
  const json & value, const std::string & field, const std::string & context,
  ErrorCode code = ErrorCode::kSchemaViolation)
{
  if (!value.is_array()) violation(context, field + " must be an array of [x, y] pairs", code);
  std::vector<Waypoint> points;
  points.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json & pair = value[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      violation(context, field + "[" + std::to_string(i) + "] must be an [x, y] number pair", code);
    }
    points.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return points;
}

json waypoints_to_json(const Trajectory & trajectory)
{
  json out = json::array();
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    out.push_back(json::array({trajectory[i].x, trajectory[i].y}));
  }
  return out;
}

void validate_id(const std::string & id, const std::string & context)
{
  if (id.empty()) violation(context, "id must not be empty");
  for (const char c : id) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '-' && c != '.') {
      violation(context, "id \"" + id + "\" may only use letters, digits, '_', '-', '.'");
    }
  }
}

void check_schema_version(const std::string & version, const std::string & context)
{
  const std::size_t dot = version.find('.');
  const std::string major = version.substr(0, dot);
  const std::string expected_major =
    std::string(kScenarioSchemaVersion).substr(0, std::string(kScenarioSchemaVersion).find('.'));
  if (major != expected_major) {
    violation(
      context, "schema_version \"" + version + "\" is not supported (expected major version " +
                 expected_major + ")");
  }
}

ReasoningTrace trace_from_json(const json & value, const std::string & context)
{
  if (!value.is_object()) violation(context, "must be an object");
  check_keys(
    value,
    {"language", "situational_awareness", "accel_first_3s", "steer_first_3s", "accel_last_2s",
     "steer_last_2s"},
    context);

  ReasoningTrace trace;
  if (value.contains("language")) {
    const std::string name = require_string(value, "language", context);
    const auto language = language_from_name(name);
    if (!language) violation(context, "language \"" + name + "\" is not recognized");
    trace.language = *language;
  }
  trace.situational_awareness = optional_string(value, "situational_awareness", context);

  const auto interval_field = [&](const char * key) {
    const std::string text = require_string(value, key, context);
    if (text.empty()) violation(context, std::string(key) + " must not be empty");
    return text;
  };
  trace.accel_first_3s = interval_field("accel_first_3s");
  trace.steer_first_3s = interval_field("steer_first_3s");
  trace.accel_last_2s = interval_field("accel_last_2s");
  trace.steer_last_2s = interval_field("steer_last_2s");
  return trace;
}

json trace_to_json(const ReasoningTrace & trace)
{
  return json{
    {"accel_first_3s", trace.accel_first_3s},
    {"accel_last_2s", trace.accel_last_2s},
    {"language", language_name(trace.language)},
    {"situational_awareness", trace.situational_awareness},
    {"steer_first_3s", trace.steer_first_3s},
    {"steer_last_2s", trace.steer_last_2s},
  };
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIoFailure, "short write to " + path);
}

// Soft result wrapper for per-record prediction parsing.
struct ActionsOrError {
  std::optional<ActionFields> fields;
  std::string error;
};

ActionsOrError actions_from_json(const json & value, const std::string & context)
{
  constexpr ErrorCode kCode = ErrorCode::kMalformedRecord;
  if (!value.is_object()) violation(context, "actions must be an object", kCode);
  check_keys(
    value,
    {"situational_awareness", "acceleration_first_3s", "reason_acceleration_first_3s",
     "steering_first_3s", "reason_steering_first_3s", "acceleration_last_2s",
     "reason_acceleration_last_2s", "steering_last_2s", "reason_steering_last_2s"},
    context, kCode);

  ActionFields fields;
  fields.acceleration_first_3s = require_string(value, "acceleration_first_3s", context, kCode);
  fields.steering_first_3s = require_string(value, "steering_first_3s", context, kCode);
  fields.acceleration_last_2s = require_string(value, "acceleration_last_2s", context, kCode);
  fields.steering_last_2s = require_string(value, "steering_last_2s", context, kCode);
  fields.situational_awareness = optional_string(value, "situational_awareness", context, kCode);
  fields.reason_acceleration_first_3s =
    optional_string(value, "reason_acceleration_first_3s", context, kCode);
  fields.reason_steering_first_3s =
    optional_string(value, "reason_steering_first_3s", context, kCode);
  fields.reason_acceleration_last_2s =
    optional_string(value, "reason_acceleration_last_2s", context, kCode);
  fields.reason_steering_last_2s =
    optional_string(value, "reason_steering_last_2s", context, kCode);

  const auto accel = normalize_accel_command(fields.acceleration_first_3s);
  const auto steer = normalize_steer_command(fields.steering_first_3s);
  const auto accel_last = normalize_accel_command(fields.acceleration_last_2s);
  const auto steer_last = normalize_steer_command(fields.steering_last_2s);
  if (!accel) return {std::nullopt, "actions.acceleration_first_3s: unknown command \"" +
                                      fields.acceleration_first_3s + "\""};
  if (!steer) return {std::nullopt, "actions.steering_first_3s: unknown command \"" +
                                      fields.steering_first_3s + "\""};
  if (!accel_last) return {std::nullopt, "actions.acceleration_last_2s: unknown command \"" +
                                           fields.acceleration_last_2s + "\""};
  if (!steer_last) return {std::nullopt, "actions.steering_last_2s: unknown command \"" +
                                           fields.steering_last_2s + "\""};
  fields.actions = IntervalActions{{*accel, *steer}, {*accel_last, *steer_last}};
  return {std::move(fields), {}};
}

json actions_to_json(const ActionFields & fields)
{
  return json{
    {"acceleration_first_3s", fields.acceleration_first_3s},
    {"acceleration_last_2s", fields.acceleration_last_2s},
    {"reason_acceleration_first_3s", fields.reason_acceleration_first_3s},
    {"reason_acceleration_last_2s", fields.reason_acceleration_last_2s},
    {"reason_steering_first_3s", fields.reason_steering_first_3s},
    {"reason_steering_last_2s", fields.reason_steering_last_2s},
    {"situational_awareness", fields.situational_awareness},
    {"steering_first_3s", fields.steering_first_3s},
    {"steering_last_2s", fields.steering_last_2s},
  };
}

}  // namespace

const char * scenario_type_name(ScenarioType type)
{
  switch (type) {
    case ScenarioType::kSpecificallySelected: return "specifically_selected";
    case ScenarioType::kNighttime: return "nighttime";
    case ScenarioType::kSnowWintryMix: return "snow_wintry_mix";
    case ScenarioType::kHeavyRain: return "heavy_rain";
    case ScenarioType::kConstructionZone: return "construction_zone";
    case ScenarioType::kOvertakeLaneChange: return "overtake_lane_change";
    case ScenarioType::kIntersection: return "intersection";
  }
  return "unknown";
}

std::optional<ScenarioType> scenario_type_from_name(const std::string & name)
{
  for (int i = 0; i < kScenarioTypeCount; ++i) {
    const auto type = static_cast<ScenarioType>(i);
    if (name == scenario_type_name(type)) return type;
  }
  return std::nullopt;
}

const char * split_name(Split split)
{
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
    case Split::kVal: return "val";
  }
  return "unknown";
}

std::optional<Split> split_from_name(const std::string & name)
{
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  if (name == "val") return Split::kVal;
  return std::nullopt;
}

const Trajectory & Scenario::expert() const
{
  const auto index = references.expert_index();
  if (!index) {
    throw Error(ErrorCode::kEmptyReferenceSet, "scenario " + id + " has no expert reference");
  }
  return references[*index].trajectory;
}

Scenario scenario_from_json(const std::string & text, const std::string & context)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception & e) {
    violation(context, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) violation(context, "top level must be an object");
  check_keys(
    j,
    {"id", "instruction", "media", "past", "references", "scenario_type", "schema_version",
     "split", "traces"},
    context);

  check_schema_version(require_string(j, "schema_version", context), context);

  const std::string id = require_string(j, "id", context);
  validate_id(id, context);

  const std::string split_string = require_string(j, "split", context);
  const auto split = split_from_name(split_string);
  if (!split) violation(context, "split \"" + split_string + "\" is not one of train/test/val");

  const std::string type_string = require_string(j, "scenario_type", context);
  const auto type = scenario_type_from_name(type_string);
  if (!type) {
    throw Error(
      ErrorCode::kUnknownScenarioType,
      context + ": scenario_type \"" + type_string + "\" is not recognized");
  }

  const std::string instruction = optional_string(j, "instruction", context);

  std::vector<Waypoint> past_points =
    waypoints_from_json(require_field(j, "past", context), "past", context);
  std::optional<Trajectory> past;
  try {
    past.emplace(Trajectory::past(std::move(past_points)));
  } catch (const Error & e) {
    violation(context, std::string("past: ") + e.what());
  }

  const json & refs = require_field(j, "references", context);
  if (!refs.is_array() || refs.empty()) {
    violation(context, "references must be a non-empty array");
  }
  std::vector<LabeledReference> entries;
  entries.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const std::string ref_context = context + ": references[" + std::to_string(i) + "]";
    const json & ref = refs[i];
    if (!ref.is_object()) violation(ref_context, "must be an object");
    check_keys(ref, {"category", "source", "trajectory"}, ref_context);
    const std::string category_string = require_string(ref, "category", ref_context);
    const auto category = reference_category_from_name(category_string);
    if (!category) {
      violation(ref_context, "category \"" + category_string + "\" is not recognized");
    }
    std::vector<Waypoint> points =
      waypoints_from_json(require_field(ref, "trajectory", ref_context), "trajectory", ref_context);
    try {
      entries.push_back(
        {*category, Trajectory::future(std::move(points)),
         optional_string(ref, "source", ref_context)});
    } catch (const Error & e) {
      violation(ref_context, std::string("trajectory: ") + e.what());
    }
  }
  std::optional<ReferenceSet> references;
  try {
    references.emplace(std::move(entries));
  } catch (const Error & e) {
    violation(context, std::string("references: ") + e.what());
  }
  if (!references->expert_index()) {
    violation(context, "references: a scenario needs exactly one expert_like entry");
  }

  std::vector<ReasoningTrace> traces;
  if (j.contains("traces")) {
    const json & trace_array = j.at("traces");
    if (!trace_array.is_array()) violation(context, "traces must be an array");
    for (std::size_t i = 0; i < trace_array.size(); ++i) {
      traces.push_back(
        trace_from_json(trace_array[i], context + ": traces[" + std::to_string(i) + "]"));
    }
  }

  std::map<std::string, std::string> media;
  if (j.contains("media")) {
    const json & media_object = j.at("media");
    if (!media_object.is_object()) violation(context, "media must be an object");
    for (const auto & item : media_object.items()) {
      if (!item.value().is_string()) {
        violation(context, "media." + item.key() + " must be a string");
      }
      media[item.key()] = item.value().get<std::string>();
    }
  }

  return Scenario{
    id,
    *split,
    *type,
    instruction,
    std::move(*past),
    std::move(*references),
    std::move(traces),
    std::move(media)};
}

std::string scenario_to_json(const Scenario & scenario)
{
  json refs = json::array();
  for (const LabeledReference & reference : scenario.references.entries()) {
    refs.push_back(json{
      {"category", reference_category_name(reference.category)},
      {"source", reference.source},
      {"trajectory", waypoints_to_json(reference.trajectory)},
    });
  }
  json traces = json::array();
  for (const ReasoningTrace & trace : scenario.traces) {
    traces.push_back(trace_to_json(trace));
  }
  json media = json::object();
  for (const auto & [key, value] : scenario.media) {
    media[key] = value;
  }

  const json j{
    {"id", scenario.id},
    {"instruction", scenario.instruction},
    {"media", media},
    {"past", waypoints_to_json(scenario.past)},
    {"references", refs},
    {"scenario_type", scenario_type_name(scenario.type)},
    {"schema_version", kScenarioSchemaVersion},
    {"split", split_name(scenario.split)},
    {"traces", traces},
  };
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string & path)
{
  return scenario_from_json(read_file(path), path);
}

void save_scenario(const Scenario & scenario, const std::string & path)
{
  write_file(path, scenario_to_json(scenario));
}

std::vector<Scenario> load_corpus(const std::string & directory)
{
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::kIoFailure, directory + " is not a directory");
  }
  std::vector<std::string> paths;
  for (const auto & entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());

  std::vector<Scenario> scenarios;
  scenarios.reserve(paths.size());
  std::map<std::string, std::string> seen;  // id -> file
  for (const std::string & path : paths) {
    Scenario scenario = load_scenario(path);
    const auto [it, inserted] = seen.emplace(scenario.id, path);
    if (!inserted) {
      throw Error(
        ErrorCode::kDuplicateId,
        "scenario id \"" + scenario.id + "\" appears in " + it->second + " and " + path);
    }
    scenarios.push_back(std::move(scenario));
  }
  std::sort(scenarios.begin(), scenarios.end(), [](const Scenario & a, const Scenario & b) {
    return a.id < b.id;
  });
  return scenarios;
}

void save_corpus(const std::vector<Scenario> & scenarios, const std::string & directory)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + directory);
  for (const Scenario & scenario : scenarios) {
    validate_id(scenario.id, "save_corpus");
    save_scenario(scenario, (fs::path(directory) / (scenario.id + ".json")).string());
  }
}

LoadedPredictions load_predictions(
  const std::string & path, const std::vector<Scenario> & corpus)
{
  std::set<std::string> known_ids;
  for (const Scenario & scenario : corpus) known_ids.insert(scenario.id);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);

  LoadedPredictions out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string context = path + ":" + std::to_string(line_number);

    constexpr ErrorCode kCode = ErrorCode::kMalformedRecord;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception & e) {
      violation(context, std::string("invalid JSON: ") + e.what(), kCode);
    }
    if (!j.is_object()) violation(context, "record must be an object", kCode);
    check_keys(
      j, {"scenario_id", "model_id", "inference_mode", "raw_completion", "trajectory", "actions"},
      context, kCode);

    PredictionRecord record;
    record.scenario_id = require_string(j, "scenario_id", context, kCode);
    record.model_id = require_string(j, "model_id", context, kCode);
    if (record.scenario_id.empty() || record.model_id.empty()) {
      violation(context, "scenario_id and model_id must not be empty", kCode);
    }

    const std::string mode_string = require_string(j, "inference_mode", context, kCode);
    const auto mode = prompt_mode_from_name(mode_string);
    if (!mode) {
      throw Error(
        ErrorCode::kUnknownModeString,
        context + ": inference_mode \"" + mode_string + "\" is not recognized");
    }
    record.mode = *mode;

    if (j.contains("raw_completion")) {
      if (!j.at("raw_completion").is_string()) {
        violation(context, "raw_completion must be a string", kCode);
      }
      record.raw_completion = j.at("raw_completion").get<std::string>();
    }

    if (!record.raw_completion && !j.contains("trajectory") && !j.contains("actions")) {
      violation(context, "record carries none of raw_completion, trajectory, actions", kCode);
    }

    const auto reject = [&](const std::string & reason) {
      out.rejections.push_back(
        PredictionRejection{line_number, record.scenario_id, record.model_id, record.mode, reason});
    };

    if (!known_ids.count(record.scenario_id)) {
      reject("unknown scenario id");
      continue;
    }

    if (j.contains("trajectory")) {
      std::vector<Waypoint> points =
        waypoints_from_json(j.at("trajectory"), "trajectory", context, kCode);
      try {
        record.trajectory = Trajectory::future(std::move(points));
      } catch (const Error & e) {
        reject(std::string("trajectory: ") + e.what());
        continue;
      }
    }

    if (j.contains("actions")) {
      ActionsOrError parsed = actions_from_json(j.at("actions"), context);
      if (!parsed.fields) {
        reject(parsed.error);
        continue;
      }
      record.actions = std::move(*parsed.fields);
    }

    // parse-on-load: turn completions into structured payloads
    try {
      if (record.mode == PromptMode::kFewShotCotKinematic) {
        if (!record.actions && record.raw_completion) {
          ParsedActions parsed = parse_actions(*record.raw_completion);
          record.actions = std::move(parsed.fields);
          record.warnings.insert(
            record.warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
        }
      } else if (!record.trajectory && record.raw_completion) {
        ParsedTrajectory parsed = parse_trajectory(*record.raw_completion);
        record.trajectory = std::move(parsed.trajectory);
        record.warnings.insert(
          record.warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
      }
    } catch (const Error & e) {
      reject(e.what());
      continue;
    }

    out.records.push_back(std::move(record));
  }
  return out;
}

void save_predictions(const std::vector<PredictionRecord> & records, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  for (const PredictionRecord & record : records) {
    json j{
      {"inference_mode", prompt_mode_name(record.mode)},
      {"model_id", record.model_id},
      {"scenario_id", record.scenario_id},
    };
    if (record.raw_completion) j["raw_completion"] = *record.raw_completion;
    if (record.trajectory) j["trajectory"] = waypoints_to_json(*record.trajectory);
    if (record.actions) j["actions"] = actions_to_json(*record.actions);
    out << j.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "short write to " + path);
}

}  // namespace mms
