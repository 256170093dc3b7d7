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

#ifndef MMS__PROMPT_HPP_
#define MMS__PROMPT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mms/actions.hpp"
#include "mms/coherence.hpp"
#include "mms/error.hpp"
#include "mms/trajectory.hpp"

namespace mms
{

// Prompt rendering and completion parsing for the four inference layouts.
//
// Rendering is a pure text transform: identical inputs produce byte-identical
// prompts. Completions come back as plain text files; the two parsers below
// pull a future trajectory or the structured command fields out of them.

enum class PromptMode {
  kZeroShot,
  kFewShot,
  kFewShotCot,
  kFewShotCotKinematic,
};

const char * prompt_mode_name(PromptMode mode);
std::optional<PromptMode> prompt_mode_from_name(const std::string & name);

// Whether the scenario is presented as a single front-view image or a video
// clip. Only the task wording changes; media content never passes through
// this library, locator strings are printed verbatim.
enum class MediaKind {
  kImage,
  kVideo,
};

// Bumped whenever the rendered layout changes, and embedded in every prompt
// as a leading comment line so stored completions stay attributable to the
// template that produced them.
inline constexpr const char * kPromptTemplateVersion = "mms-prompt-v1";

// The scenario the model is queried about.
struct PromptQuery {
  std::string media;
  MediaKind media_kind{MediaKind::kImage};
  Trajectory past;
  std::string instruction;
};

// One in-context example. Which optional parts must be present depends on
// the mode: few-shot needs the future, few-shot CoT needs trace and future,
// and the kinematic layout needs the trace only (a future, if present, is
// dropped, since that layout replaces trajectories with commands).
//
// For the kinematic layout the command tags are derived from the trace: each
// interval sentence must start with a recognizable command clause, optionally
// preceded by a subject such as "I'm going to". The clause is rendered in the
// canonical allowed-list wording and whatever follows it becomes the reason
// field.
struct FewShotExample {
  std::string scenario_id;
  std::string media;
  Trajectory past;
  std::string instruction;
  std::optional<ReasoningTrace> trace;
  std::optional<Trajectory> future;
};

// Renders the full prompt for one query. ZeroShot takes no examples, the
// other modes exactly three.
//
// Throws: kWrongExampleCount, kMissingRequiredField.
std::string render_prompt(
  const PromptQuery & query, PromptMode mode, const std::vector<FewShotExample> & examples);

// Serializes one coordinate the way the prompts print them: two decimals
// with a single trailing zero stripped, never fewer than one decimal.
// 1.2 -> "1.2", 74.08 -> "74.08", 0.0 -> "0.0", -0.0004 -> "-0.0".
std::string format_coordinate(double value);

// "(x, y), (x, y), ..." on one line.
std::string format_waypoint_list(const Trajectory & trajectory);

struct TrajectoryParseOptions {
  // When set, any waypoint count the Trajectory type itself accepts is
  // returned as-is instead of enforcing the 25-point horizon.
  bool relaxed_length{false};
};

struct ParsedTrajectory {
  Trajectory trajectory;
  std::vector<std::string> warnings;
};

// Extracts the predicted trajectory from a completion. The last closed
// <trajectory> block wins (models often draft before they answer); extra
// waypoints beyond 25 are dropped with a warning, fewer are an error unless
// relaxed_length is set.
//
// Throws: kTagNotFound, kMalformedPair, kWrongLength.
ParsedTrajectory parse_trajectory(
  const std::string & completion, const TrajectoryParseOptions & options = {});

// The nine fields of a kinematic completion, raw text as emitted (trimmed),
// plus the normalized command classes.
struct ActionFields {
  std::string situational_awareness;
  std::string acceleration_first_3s;
  std::string reason_acceleration_first_3s;
  std::string steering_first_3s;
  std::string reason_steering_first_3s;
  std::string acceleration_last_2s;
  std::string reason_acceleration_last_2s;
  std::string steering_last_2s;
  std::string reason_steering_last_2s;
  IntervalActions actions;
};

struct ParsedActions {
  ActionFields fields;
  std::vector<std::string> warnings;
};

// Extracts the nine command/reason fields from a kinematic completion. Only
// the four command fields are mandatory; missing narrative fields and tags
// out of the required order are tolerated with warnings. Duplicate tags
// resolve to the last closed block.
//
// Throws: kMissingField, kUnknownCommand.
ParsedActions parse_actions(const std::string & completion);

// Canonical allowed-list wording of a command, as printed in the kinematic
// task description ("maintaining the current speed", "turning slightly
// right", ...).
const char * accel_command_wording(AccelClass value);
const char * steer_command_wording(SteerClass value);

// Maps a command string to its class, tolerating case, surrounding
// punctuation, underscores, and the synonym spellings the templates
// themselves use ("steering slightly to the right", "maintain speed", ...).
// Returns nullopt for anything outside the vocabulary.
std::optional<AccelClass> normalize_accel_command(const std::string & raw);
std::optional<SteerClass> normalize_steer_command(const std::string & raw);

}  // namespace mms

#endif  // MMS__PROMPT_HPP_
