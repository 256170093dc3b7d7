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

#include "mms/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>

namespace mms
{
namespace
{

constexpr std::size_t kNpos = std::string::npos;

std::string trim(const std::string & text)
{
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

// Lowercases, folds underscores and punctuation into spaces, collapses runs.
// This is the key space for the command tables.
std::string normalize_command_text(const std::string & raw)
{
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (const char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(u)));
    } else {
      pending_space = true;
    }
  }
  return out;
}

struct CommandTable {
  // normalized phrase -> enum index
  std::map<std::string, int> exact;
  // the same phrases sorted longest first, for clause matching in traces
  std::vector<std::pair<std::string, int>> by_length;
};

CommandTable make_table(const std::vector<std::pair<const char *, int>> & entries)
{
  CommandTable table;
  for (const auto & [phrase, index] : entries) {
    table.exact.emplace(phrase, index);
    table.by_length.emplace_back(phrase, index);
  }
  std::stable_sort(
    table.by_length.begin(), table.by_length.end(),
    [](const auto & a, const auto & b) { return a.first.size() > b.first.size(); });
  return table;
}

const CommandTable & accel_table()
{
  static const CommandTable table = make_table({
    {"decelerating strongly", 0},
    {"decelerate strongly", 0},
    {"decelerating hard", 0},
    {"decelerate hard", 0},
    {"brake hard", 0},
    {"braking hard", 0},
    {"slow down sharply", 0},
    {"slowing down sharply", 0},
    {"heavy braking", 0},
    {"decelerating slightly", 1},
    {"decelerate slightly", 1},
    {"decelerating gently", 1},
    {"decelerate gently", 1},
    {"slow down a little", 1},
    {"slowing down a little", 1},
    {"slow down slightly", 1},
    {"ease off the accelerator", 1},
    {"reduce speed slightly", 1},
    {"maintaining the current speed", 2},
    {"maintain the current speed", 2},
    {"maintaining current speed", 2},
    {"maintain current speed", 2},
    {"maintain speed", 2},
    {"maintaining speed", 2},
    {"keep the current speed", 2},
    {"keeping the current speed", 2},
    {"keep current speed", 2},
    {"keep my speed", 2},
    {"keeping my speed", 2},
    {"hold this speed", 2},
    {"hold the current speed", 2},
    {"accelerating slightly", 3},
    {"accelerate slightly", 3},
    {"accelerating gently", 3},
    {"accelerate gently", 3},
    {"speed up a little", 3},
    {"speeding up a little", 3},
    {"speed up slightly", 3},
    {"gradually gain speed", 3},
    {"accelerating strongly", 4},
    {"accelerate strongly", 4},
    {"accelerating hard", 4},
    {"accelerate hard", 4},
    {"speed up quickly", 4},
    {"floor the accelerator", 4},
  });
  return table;
}

const CommandTable & steer_table()
{
  static const CommandTable table = make_table({
    {"turning left", 0},
    {"turn left", 0},
    {"turning to the left", 0},
    {"turn to the left", 0},
    {"steer left", 0},
    {"steering left", 0},
    {"steer to the left", 0},
    {"steering to the left", 0},
    {"make a left turn", 0},
    {"take the left turn", 0},
    {"steer hard to the left", 0},
    {"turning slightly left", 1},
    {"turn slightly left", 1},
    {"turning slightly to the left", 1},
    {"turn slightly to the left", 1},
    {"steer slightly left", 1},
    {"steering slightly left", 1},
    {"steer slightly to the left", 1},
    {"steering slightly to the left", 1},
    {"slight left turn", 1},
    {"bear left", 1},
    {"steering straight", 2},
    {"steer straight", 2},
    {"keep steering straight", 2},
    {"keep straight", 2},
    {"keeping straight", 2},
    {"go straight", 2},
    {"going straight", 2},
    {"go straight ahead", 2},
    {"continue straight", 2},
    {"stay straight", 2},
    {"drive straight", 2},
    {"hold the lane", 2},
    {"stay in my lane", 2},
    {"straight", 2},
    {"turning slightly right", 3},
    {"turn slightly right", 3},
    {"turning slightly to the right", 3},
    {"turn slightly to the right", 3},
    {"steer slightly right", 3},
    {"steering slightly right", 3},
    {"steer slightly to the right", 3},
    {"steering slightly to the right", 3},
    {"slight right turn", 3},
    {"bear right", 3},
    {"turning right", 4},
    {"turn right", 4},
    {"turning to the right", 4},
    {"turn to the right", 4},
    {"steer right", 4},
    {"steering right", 4},
    {"steer to the right", 4},
    {"steering to the right", 4},
    {"make a right turn", 4},
    {"take the right turn", 4},
    {"steer hard to the right", 4},
  });
  return table;
}

constexpr const char * kAccelWording[] = {
  "decelerating strongly",
  "decelerating slightly",
  "maintaining the current speed",
  "accelerating slightly",
  "accelerating strongly",
};

constexpr const char * kSteerWording[] = {
  "turning left",
  "turning slightly left",
  "steering straight",
  "turning slightly right",
  "turning right",
};

const char * media_word(MediaKind kind) { return kind == MediaKind::kImage ? "image" : "video"; }

std::string trajectory_task_text(MediaKind kind)
{
  const std::string medium = media_word(kind);
  return "Imagine you are driving the car in the " + medium + ". Based on the front-view " +
         medium +
         ", past trajectory recorded at 5Hz, and driving instruction, predict the vehicle's "
         "future trajectory as a sequence of 25 future waypoints (x, y) at 5Hz (first waypoint "
         "is 0.2s into the future). Format the predicted trajectory like the past trajectory "
         "using the same right-handed coordinate system, in which increasing x values describe "
         "forward motion and increasing y values describe motion to the left. Put the predicted "
         "trajectory at the end of your output and between these tags <trajectory> and "
         "</trajectory>.";
}

std::string kinematic_task_text(MediaKind kind)
{
  const std::string medium = media_word(kind);
  return "Imagine you are driving the car in the " + medium + ". Based on the front-view " +
         medium +
         ", the past trajectory recorded at 5Hz, and the driving instruction, generate "
         "acceleration and steering commands for a 5s-long future trajectory.\n"
         "\n"
         "The only allowed acceleration commands are:\n"
         "- accelerating slightly\n"
         "- accelerating strongly\n"
         "- maintaining the current speed\n"
         "- decelerating slightly\n"
         "- decelerating strongly\n"
         "\n"
         "The only allowed steering commands are:\n"
         "- turning slightly left\n"
         "- turning left\n"
         "- steering straight\n"
         "- turning slightly right\n"
         "- turning right\n"
         "\n"
         "Your XML output must follow **exactly** this structure and tag order:\n"
         "<situational_awareness>...</situational_awareness>\n"
         "<acceleration_first_3s>...</acceleration_first_3s>\n"
         "<reason_acceleration_first_3s>...</reason_acceleration_first_3s>\n"
         "<steering_first_3s>...</steering_first_3s>\n"
         "<reason_steering_first_3s>...</reason_steering_first_3s>\n"
         "<acceleration_last_2s>...</acceleration_last_2s>\n"
         "<reason_acceleration_last_2s>...</reason_acceleration_last_2s>\n"
         "<steering_last_2s>...</steering_last_2s>\n"
         "<reason_steering_last_2s>...</reason_steering_last_2s>\n"
         "\n"
         "Field requirements:\n"
         "- <situational_awareness>: Natural language description of the scene and relevant "
         "context.\n"
         "- <acceleration_first_3s>: One of the allowed acceleration commands, written exactly "
         "as listed above.\n"
         "- <reason_acceleration_first_3s>: Short natural language justification for the chosen "
         "acceleration in the first 3s.\n"
         "- <steering_first_3s>: One of the allowed steering commands, written exactly as "
         "listed above.\n"
         "- <reason_steering_first_3s>: Short natural language justification for the chosen "
         "steering in the first 3s.\n"
         "- <acceleration_last_2s>: One of the allowed acceleration commands, written exactly "
         "as listed above.\n"
         "- <reason_acceleration_last_2s>: Short natural language justification for the chosen "
         "acceleration in the last 2s.\n"
         "- <steering_last_2s>: One of the allowed steering commands, written exactly as "
         "listed above.\n"
         "- <reason_steering_last_2s>: Short natural language justification for the chosen "
         "steering in the last 2s.";
}

std::string scenario_block(
  const std::string & media, const Trajectory & past, const std::string & instruction,
  const std::string & task, bool kinematic)
{
  std::string out;
  out += media;
  out += "\n<past_trajectory>\n";
  out += format_waypoint_list(past);
  out += "\n</past_trajectory>\n";
  out += "<driving_instruction>" + instruction + "</driving_instruction>\n";
  if (kinematic) {
    out += "<task>\n" + task + "\n</task>\n";
  } else {
    out += "<task>" + task + "</task>\n";
  }
  return out;
}

// Splits one trace sentence into the command it opens with and the trailing
// justification. Matching runs on a lowercased, punctuation-folded copy while
// the reason is cut from the original text, so casing survives.
struct DerivedCommand {
  int class_index;
  std::string reason;
};

DerivedCommand derive_command(
  const std::string & sentence, const CommandTable & table, const char * field,
  std::size_t example_index)
{
  std::string processed;
  std::vector<std::size_t> origin;  // processed index -> original index
  processed.reserve(sentence.size());
  origin.reserve(sentence.size() + 1);
  bool pending_space = false;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const auto u = static_cast<unsigned char>(sentence[i]);
    if (std::isalnum(u)) {
      if (pending_space && !processed.empty()) {
        processed.push_back(' ');
        origin.push_back(i);
      }
      pending_space = false;
      processed.push_back(static_cast<char>(std::tolower(u)));
      origin.push_back(i);
    } else {
      pending_space = true;
    }
  }
  origin.push_back(sentence.size());

  static const char * kSubjectPrefixes[] = {
    "i am going to ", "i m going to ", "i ll ", "i will ", "i plan to ", "i intend to ",
    "going to ",
  };
  std::size_t offset = 0;
  std::size_t best_prefix = 0;
  for (const char * prefix : kSubjectPrefixes) {
    const std::size_t length = std::string(prefix).size();
    if (processed.compare(0, length, prefix) == 0) best_prefix = std::max(best_prefix, length);
  }
  offset += best_prefix;

  for (const auto & [phrase, index] : table.by_length) {
    if (processed.compare(offset, phrase.size(), phrase) != 0) continue;
    const std::size_t end = offset + phrase.size();
    if (end < processed.size() && processed[end] != ' ') continue;
    std::size_t rest = end;
    while (rest < processed.size() && processed[rest] == ' ') ++rest;
    std::string reason =
      rest < processed.size() ? sentence.substr(origin[rest]) : std::string();
    while (!reason.empty()) {
      const char last = reason.back();
      if (last == '.' || last == '!' || std::isspace(static_cast<unsigned char>(last))) {
        reason.pop_back();
      } else {
        break;
      }
    }
    return {index, std::move(reason)};
  }
  throw Error(
    ErrorCode::kMissingRequiredField,
    "examples[" + std::to_string(example_index) + "]: trace field " + field +
      " does not start with a recognizable command: \"" + sentence + "\"");
}

const ReasoningTrace & require_trace(const FewShotExample & example, std::size_t index)
{
  if (!example.trace) {
    throw Error(
      ErrorCode::kMissingRequiredField,
      "examples[" + std::to_string(index) + "]: this mode needs a reasoning trace");
  }
  return *example.trace;
}

const Trajectory & require_future(const FewShotExample & example, std::size_t index)
{
  if (!example.future) {
    throw Error(
      ErrorCode::kMissingRequiredField,
      "examples[" + std::to_string(index) + "]: this mode needs a future trajectory");
  }
  return *example.future;
}

std::string reasoning_block(const ReasoningTrace & trace)
{
  std::string out;
  out += "<reasoning>" + trace.situational_awareness + "\n";
  out += "Acceleration 0s - 3s: " + trace.accel_first_3s + "\n";
  out += "Steering 0s - 3s: " + trace.steer_first_3s + "\n";
  out += "Acceleration 3s - 5s: " + trace.accel_last_2s + "\n";
  out += "Steering 3s - 5s: " + trace.steer_last_2s + "\n";
  out += "</reasoning>\n";
  return out;
}

std::string kinematic_answer_block(const ReasoningTrace & trace, std::size_t example_index)
{
  const DerivedCommand accel_first =
    derive_command(trace.accel_first_3s, accel_table(), "accel_first_3s", example_index);
  const DerivedCommand steer_first =
    derive_command(trace.steer_first_3s, steer_table(), "steer_first_3s", example_index);
  const DerivedCommand accel_last =
    derive_command(trace.accel_last_2s, accel_table(), "accel_last_2s", example_index);
  const DerivedCommand steer_last =
    derive_command(trace.steer_last_2s, steer_table(), "steer_last_2s", example_index);

  std::string out;
  out += "<situational_awareness>" + trace.situational_awareness + "</situational_awareness>\n";
  out += std::string("<acceleration_first_3s>") + kAccelWording[accel_first.class_index] +
         "</acceleration_first_3s>\n";
  out += "<reason_acceleration_first_3s>" + accel_first.reason +
         "</reason_acceleration_first_3s>\n";
  out += std::string("<steering_first_3s>") + kSteerWording[steer_first.class_index] +
         "</steering_first_3s>\n";
  out += "<reason_steering_first_3s>" + steer_first.reason + "</reason_steering_first_3s>\n";
  out += std::string("<acceleration_last_2s>") + kAccelWording[accel_last.class_index] +
         "</acceleration_last_2s>\n";
  out += "<reason_acceleration_last_2s>" + accel_last.reason + "</reason_acceleration_last_2s>\n";
  out += std::string("<steering_last_2s>") + kSteerWording[steer_last.class_index] +
         "</steering_last_2s>\n";
  out += "<reason_steering_last_2s>" + steer_last.reason + "</reason_steering_last_2s>\n";
  return out;
}

// Content of the last complete <name>...</name> block, plus where it starts
// and how many complete blocks exist.
struct TagBlock {
  std::size_t open_pos;
  std::string content;
  std::size_t count;
};

std::optional<TagBlock> last_tag_block(const std::string & text, const std::string & name)
{
  const std::string open = "<" + name + ">";
  const std::string close = "</" + name + ">";
  std::optional<TagBlock> found;
  std::size_t count = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open_pos = text.find(open, pos);
    if (open_pos == kNpos) break;
    const std::size_t body = open_pos + open.size();
    const std::size_t close_pos = text.find(close, body);
    if (close_pos == kNpos) break;
    ++count;
    found = TagBlock{open_pos, text.substr(body, close_pos - body), 0};
    pos = close_pos + close.size();
  }
  if (found) found->count = count;
  return found;
}

double scan_number(const char *& cursor, const char * end, std::size_t pair_index)
{
  while (cursor < end && std::isspace(static_cast<unsigned char>(*cursor))) ++cursor;
  char * after = nullptr;
  const double value = std::strtod(cursor, &after);
  if (after == cursor) {
    throw Error(
      ErrorCode::kMalformedPair,
      "waypoint " + std::to_string(pair_index) + ": expected a number");
  }
  if (!std::isfinite(value)) {
    throw Error(
      ErrorCode::kMalformedPair,
      "waypoint " + std::to_string(pair_index) + ": non-finite coordinate");
  }
  cursor = after;
  return value;
}

std::vector<Waypoint> scan_waypoints(const std::string & body)
{
  std::vector<Waypoint> points;
  const char * cursor = body.c_str();
  const char * end = cursor + body.size();
  while (true) {
    while (cursor < end &&
           (std::isspace(static_cast<unsigned char>(*cursor)) || *cursor == ',')) {
      ++cursor;
    }
    if (cursor >= end) break;
    if (*cursor != '(') {
      throw Error(
        ErrorCode::kMalformedPair, "waypoint " + std::to_string(points.size()) +
                                     ": expected '(' but found \"" + std::string(1, *cursor) +
                                     "\"");
    }
    ++cursor;
    const double x = scan_number(cursor, end, points.size());
    while (cursor < end && std::isspace(static_cast<unsigned char>(*cursor))) ++cursor;
    if (cursor >= end || *cursor != ',') {
      throw Error(
        ErrorCode::kMalformedPair,
        "waypoint " + std::to_string(points.size()) + ": expected ',' between coordinates");
    }
    ++cursor;
    const double y = scan_number(cursor, end, points.size());
    while (cursor < end && std::isspace(static_cast<unsigned char>(*cursor))) ++cursor;
    if (cursor >= end || *cursor != ')') {
      throw Error(
        ErrorCode::kMalformedPair,
        "waypoint " + std::to_string(points.size()) + ": expected ')'");
    }
    ++cursor;
    points.push_back({x, y});
  }
  if (points.empty()) {
    throw Error(ErrorCode::kMalformedPair, "trajectory block contains no waypoint pairs");
  }
  return points;
}

int lookup_command(const CommandTable & table, const std::string & raw)
{
  const std::string key = normalize_command_text(raw);
  const auto it = table.exact.find(key);
  return it == table.exact.end() ? -1 : it->second;
}

}  // namespace

const char * prompt_mode_name(PromptMode mode)
{
  switch (mode) {
    case PromptMode::kZeroShot: return "zero_shot";
    case PromptMode::kFewShot: return "few_shot";
    case PromptMode::kFewShotCot: return "few_shot_cot";
    case PromptMode::kFewShotCotKinematic: return "few_shot_cot_kinematic";
  }
  return "unknown";
}

std::optional<PromptMode> prompt_mode_from_name(const std::string & name)
{
  if (name == "zero_shot") return PromptMode::kZeroShot;
  if (name == "few_shot") return PromptMode::kFewShot;
  if (name == "few_shot_cot") return PromptMode::kFewShotCot;
  if (name == "few_shot_cot_kinematic") return PromptMode::kFewShotCotKinematic;
  return std::nullopt;
}

std::string format_coordinate(double value)
{
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  std::string out(buffer);
  if (out.back() == '0') out.pop_back();
  return out;
}

std::string format_waypoint_list(const Trajectory & trajectory)
{
  std::string out;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (i > 0) out += ", ";
    out += "(" + format_coordinate(trajectory[i].x) + ", " + format_coordinate(trajectory[i].y) +
           ")";
  }
  return out;
}

std::string render_prompt(
  const PromptQuery & query, PromptMode mode, const std::vector<FewShotExample> & examples)
{
  if (mode == PromptMode::kZeroShot) {
    if (!examples.empty()) {
      throw Error(
        ErrorCode::kWrongExampleCount,
        "zero_shot takes no examples, got " + std::to_string(examples.size()));
    }
  } else if (examples.size() != 3) {
    throw Error(
      ErrorCode::kWrongExampleCount, std::string(prompt_mode_name(mode)) +
                                       " takes exactly 3 examples, got " +
                                       std::to_string(examples.size()));
  }

  const bool kinematic = mode == PromptMode::kFewShotCotKinematic;
  const std::string task =
    kinematic ? kinematic_task_text(query.media_kind) : trajectory_task_text(query.media_kind);

  std::string out;
  out += "<!-- template ";
  out += kPromptTemplateVersion;
  out += " -->\n";

  for (std::size_t i = 0; i < examples.size(); ++i) {
    const FewShotExample & example = examples[i];
    out += scenario_block(example.media, example.past, example.instruction, task, kinematic);
    out += "\n";
    switch (mode) {
      case PromptMode::kFewShot:
        out += "<trajectory>" + format_waypoint_list(require_future(example, i)) +
               "</trajectory>\n";
        break;
      case PromptMode::kFewShotCot:
        out += reasoning_block(require_trace(example, i));
        out += "\n<trajectory>" + format_waypoint_list(require_future(example, i)) +
               "</trajectory>\n";
        break;
      case PromptMode::kFewShotCotKinematic:
        out += kinematic_answer_block(require_trace(example, i), i);
        break;
      case PromptMode::kZeroShot: break;
    }
    out += "\n";
  }

  out += scenario_block(query.media, query.past, query.instruction, task, kinematic);
  return out;
}

ParsedTrajectory parse_trajectory(
  const std::string & completion, const TrajectoryParseOptions & options)
{
  const auto block = last_tag_block(completion, "trajectory");
  if (!block) {
    throw Error(ErrorCode::kTagNotFound, "no closed <trajectory> block in the completion");
  }
  std::vector<std::string> warnings;
  if (block->count > 1) {
    warnings.push_back(
      std::to_string(block->count) + " <trajectory> blocks; parsed the last one");
  }

  std::vector<Waypoint> points = scan_waypoints(block->content);
  if (options.relaxed_length) {
    return {Trajectory(std::move(points), kSampleDt, kFutureT0Offset), std::move(warnings)};
  }
  if (points.size() > kFutureLength) {
    warnings.push_back(
      "completion contained " + std::to_string(points.size()) + " waypoints; kept the first " +
      std::to_string(kFutureLength));
    points.resize(kFutureLength);
  }
  if (points.size() < kFutureLength) {
    throw Error(
      ErrorCode::kWrongLength, "expected " + std::to_string(kFutureLength) +
                                 " waypoints, completion has " + std::to_string(points.size()));
  }
  return {Trajectory::future(std::move(points)), std::move(warnings)};
}

ParsedActions parse_actions(const std::string & completion)
{
  ParsedActions out;
  ActionFields & fields = out.fields;

  struct FieldSpec {
    const char * name;
    std::string * slot;
    bool required;
  };
  const FieldSpec specs[] = {
    {"situational_awareness", &fields.situational_awareness, false},
    {"acceleration_first_3s", &fields.acceleration_first_3s, true},
    {"reason_acceleration_first_3s", &fields.reason_acceleration_first_3s, false},
    {"steering_first_3s", &fields.steering_first_3s, true},
    {"reason_steering_first_3s", &fields.reason_steering_first_3s, false},
    {"acceleration_last_2s", &fields.acceleration_last_2s, true},
    {"reason_acceleration_last_2s", &fields.reason_acceleration_last_2s, false},
    {"steering_last_2s", &fields.steering_last_2s, true},
    {"reason_steering_last_2s", &fields.reason_steering_last_2s, false},
  };

  std::vector<std::pair<std::size_t, int>> placements;
  for (int i = 0; i < static_cast<int>(std::size(specs)); ++i) {
    const FieldSpec & spec = specs[i];
    const auto block = last_tag_block(completion, spec.name);
    if (!block) {
      if (spec.required) {
        throw Error(
          ErrorCode::kMissingField, std::string("<") + spec.name + "> missing from completion");
      }
      out.warnings.push_back(std::string("missing <") + spec.name + ">");
      continue;
    }
    if (block->count > 1) {
      out.warnings.push_back(
        std::string("multiple <") + spec.name + "> blocks; using the last one");
    }
    *spec.slot = trim(block->content);
    placements.emplace_back(block->open_pos, i);
  }

  std::sort(placements.begin(), placements.end());
  for (std::size_t i = 1; i < placements.size(); ++i) {
    if (placements[i].second < placements[i - 1].second) {
      out.warnings.push_back("fields are not in the required tag order");
      break;
    }
  }

  const auto accel = [](const std::string & raw, const char * field) {
    const int index = lookup_command(accel_table(), raw);
    if (index < 0) {
      throw Error(
        ErrorCode::kUnknownCommand,
        std::string(field) + ": \"" + raw + "\" is not an allowed acceleration command");
    }
    return static_cast<AccelClass>(index);
  };
  const auto steer = [](const std::string & raw, const char * field) {
    const int index = lookup_command(steer_table(), raw);
    if (index < 0) {
      throw Error(
        ErrorCode::kUnknownCommand,
        std::string(field) + ": \"" + raw + "\" is not an allowed steering command");
    }
    return static_cast<SteerClass>(index);
  };

  fields.actions.first_3s.accel = accel(fields.acceleration_first_3s, "acceleration_first_3s");
  fields.actions.first_3s.steer = steer(fields.steering_first_3s, "steering_first_3s");
  fields.actions.last_2s.accel = accel(fields.acceleration_last_2s, "acceleration_last_2s");
  fields.actions.last_2s.steer = steer(fields.steering_last_2s, "steering_last_2s");
  return out;
}

const char * accel_command_wording(AccelClass value)
{
  return kAccelWording[static_cast<int>(value)];
}

const char * steer_command_wording(SteerClass value)
{
  return kSteerWording[static_cast<int>(value)];
}

std::optional<AccelClass> normalize_accel_command(const std::string & raw)
{
  const int index = lookup_command(accel_table(), raw);
  if (index < 0) return std::nullopt;
  return static_cast<AccelClass>(index);
}

std::optional<SteerClass> normalize_steer_command(const std::string & raw)
{
  const int index = lookup_command(steer_table(), raw);
  if (index < 0) return std::nullopt;
  return static_cast<SteerClass>(index);
}

}  // namespace mms
