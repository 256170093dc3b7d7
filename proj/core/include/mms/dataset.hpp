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

#ifndef MMS__DATASET_HPP_
#define MMS__DATASET_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mms/coherence.hpp"
#include "mms/error.hpp"
#include "mms/prompt.hpp"
#include "mms/scoring.hpp"
#include "mms/trajectory.hpp"

namespace mms
{

// Scenario corpus and prediction-file I/O.
//
// A corpus is a directory of one JSON file per scenario, written in a
// canonical form (two-space indent, keys sorted, trailing newline) so that
// save_corpus(load_corpus(dir)) reproduces the directory byte for byte.
// The formal schemas live in schemas/. Adapting an upstream dataset release
// means writing one converter that emits Scenario values (or files in this
// layout); nothing below depends on where the data came from.

inline constexpr const char * kScenarioSchemaVersion = "1.0";

enum class ScenarioType {
  kSpecificallySelected,
  kNighttime,
  kSnowWintryMix,
  kHeavyRain,
  kConstructionZone,
  kOvertakeLaneChange,
  kIntersection,
};

inline constexpr int kScenarioTypeCount = 7;

const char * scenario_type_name(ScenarioType type);
std::optional<ScenarioType> scenario_type_from_name(const std::string & name);

enum class Split { kTrain, kTest, kVal };

const char * split_name(Split split);
std::optional<Split> split_from_name(const std::string & name);

struct Scenario {
  std::string id;
  Split split;
  ScenarioType type;
  std::string instruction;  // may be empty; not every scenario carries one
  Trajectory past;
  ReferenceSet references;  // holds exactly one expert_like entry
  std::vector<ReasoningTrace> traces;
  // opaque locators ("image", "video", ...); never decoded here
  std::map<std::string, std::string> media;

  const Trajectory & expert() const;
};

// Parses and validates one scenario. `context` prefixes error messages,
// usually the file path. Violations raise kSchemaViolation with the field
// path; an unrecognized scenario_type raises kUnknownScenarioType.
Scenario scenario_from_json(const std::string & text, const std::string & context);

// Canonical file bytes for one scenario.
std::string scenario_to_json(const Scenario & scenario);

Scenario load_scenario(const std::string & path);
void save_scenario(const Scenario & scenario, const std::string & path);

// Loads every *.json file in the directory, validates, and returns the
// scenarios sorted by id. Throws kIoFailure, kSchemaViolation,
// kUnknownScenarioType, kDuplicateId.
std::vector<Scenario> load_corpus(const std::string & directory);

// Writes <id>.json per scenario, creating the directory if needed. Existing
// files for other ids are left alone.
void save_corpus(const std::vector<Scenario> & scenarios, const std::string & directory);

// One model output for one scenario. Only records loaded through
// load_predictions are guaranteed to carry a usable trajectory or actions.
struct PredictionRecord {
  std::string scenario_id;
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  std::optional<std::string> raw_completion;
  std::optional<Trajectory> trajectory;
  std::optional<ActionFields> actions;
  std::vector<std::string> warnings;  // accumulated by parse-on-load
};

// A record that could not be turned into a scored prediction. Rejections are
// data, not errors: the caller reports them next to the scores.
struct PredictionRejection {
  std::size_t line{0};  // 1-based line in the predictions file
  std::string scenario_id;
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  std::string reason;
};

struct LoadedPredictions {
  std::vector<PredictionRecord> records;
  std::vector<PredictionRejection> rejections;
};

// Reads a JSONL predictions file. Structurally broken lines (bad JSON,
// missing mandatory fields, no payload at all) throw kMalformedRecord with
// the line number; kUnknownModeString reports a bad inference_mode. Records
// that are well-formed but unusable (unknown scenario id, completion that
// fails to parse, invalid trajectory) land in `rejections`.
//
// Records carrying a raw completion but no parsed payload are parsed here:
// few_shot_cot_kinematic completions through parse_actions, everything else
// through parse_trajectory.
LoadedPredictions load_predictions(
  const std::string & path, const std::vector<Scenario> & corpus);

// Writes records as canonical JSONL (sorted keys, one line per record).
void save_predictions(const std::vector<PredictionRecord> & records, const std::string & path);

}  // namespace mms

#endif  // MMS__DATASET_HPP_
