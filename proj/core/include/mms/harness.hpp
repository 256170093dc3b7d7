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

#ifndef MMS__HARNESS_HPP_
#define MMS__HARNESS_HPP_

#include "mms/coherence.hpp"
#include "mms/dataset.hpp"
#include "mms/scoring.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mms
{

// Batch evaluation over a corpus and a predictions file. Everything here is
// pure data-in data-out; file handling and exit codes live in the CLI.
//
// Accounting contract: for every (model, inference mode) group that touches
// the selected split, every scenario of the split is either scored or listed
// as a rejection with a reason, so scored + rejected = split size per row.
// When one scenario has several prediction lines the last one wins; a
// scenario with only rejected lines keeps the last rejection reason.

enum class ReportFormat { kMarkdown, kCsv };

const char * report_format_name(ReportFormat format);
std::optional<ReportFormat> report_format_from_name(const std::string & name);

// Scenario-type column order of the score table. This is presentation order,
// not enum order.
const std::array<ScenarioType, kScenarioTypeCount> & report_type_order();

// Column label, e.g. "heavy rain".
const char * report_type_label(ScenarioType type);

// One scored prediction.
struct ScoredDetail
{
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  std::string scenario_id;
  ScenarioType type{ScenarioType::kSpecificallySelected};
  MmsResult mms;
  L2Error l2;
};

// One scenario a group failed to cover, with the reason.
struct ReportRejection
{
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  std::string scenario_id;
  std::string reason;
};

// Aggregated row for one (model, inference mode) group. per_type is indexed
// by the ScenarioType enum value and empty where the group scored no
// scenario of that type.
struct ReportRow
{
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  std::size_t scored{0};
  std::size_t rejected{0};
  double avg_mms{0.0};
  std::array<std::optional<double>, kScenarioTypeCount> per_type{};
  double avg_l2{0.0};
};

// Table 6 shape: overall plus the four interval/axis cells.
struct CoherenceRow
{
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  std::size_t scored{0};
  std::size_t excluded{0};
  double overall{0.0};
  double accel_first{0.0};
  double accel_last{0.0};
  double steer_first{0.0};
  double steer_last{0.0};
};

struct CoherenceReport
{
  std::vector<CoherenceRow> rows;
  std::vector<ReportRejection> exclusions;
};

struct EvaluationReport
{
  Split split{Split::kTest};
  std::size_t split_size{0};
  CheckpointPolicy policy{CheckpointPolicy::kCheckpoints};
  std::vector<ReportRow> rows;              // sorted by (mode, model)
  std::vector<ScoredDetail> details;        // sorted by (mode, model, scenario)
  std::vector<ReportRejection> rejections;  // sorted by (mode, model, scenario)
  std::optional<CoherenceReport> coherence;

  // True when every row covered the whole split.
  bool complete() const;
};

// Scores every prediction against the selected split. Prediction lines for
// scenarios outside the split are ignored. Workers only sets the thread
// count; the output is byte-identical for any value.
EvaluationReport score_predictions(
  const std::vector<Scenario> & corpus, const LoadedPredictions & predictions, Split split,
  CheckpointPolicy policy = CheckpointPolicy::kCheckpoints, int workers = 1);

// Semantic coherence of predicted actions against predicted trajectories,
// grouped like score_predictions. A record contributes when it carries both
// a trajectory and parsed action fields (records with only a raw completion
// are run through the tag parser first); everything else is excluded with a
// reason. Throws kMissingTraces when no record at all was usable.
CoherenceReport coherence_predictions(
  const std::vector<Scenario> & corpus, const LoadedPredictions & predictions, Split split,
  EmbeddingProvider & provider);

// Replaces each record's trajectory with the bicycle rollout of its parsed
// actions from the scenario past. Records without parsed actions throw
// kMissingActions; scenarios missing from the corpus throw kSchemaViolation.
std::vector<PredictionRecord> rollout_predictions(
  const std::vector<Scenario> & corpus, const std::vector<PredictionRecord> & records);

struct FlaggedScenario
{
  std::string scenario_id;
  std::string reason;
};

struct AugmentResult
{
  std::vector<Scenario> scenarios;
  std::vector<FlaggedScenario> flagged;
};

// Adds retimed wrong-speed references (factors 0.8 and 1.2, sources
// "augment:retime:<factor>") derived from each scenario's expert. Existing
// "augment:"-sourced references are replaced, never duplicated, so the
// operation is idempotent. Scenarios whose expert cannot be retimed are
// returned unchanged and flagged.
AugmentResult augment_corpus(const std::vector<Scenario> & corpus);

struct RenderedPrompt
{
  std::string scenario_id;
  std::string text;
};

// Renders one prompt per scenario of the split. Few-shot modes take exactly
// three example scenario ids (usually from the train split); their traces
// and experts become the worked examples.
std::vector<RenderedPrompt> render_corpus_prompts(
  const std::vector<Scenario> & corpus, Split split, PromptMode mode,
  const std::vector<std::string> & example_ids);

struct ScatterPoint
{
  std::string scenario_id;
  std::string model_id;
  PromptMode mode{PromptMode::kZeroShot};
  double mms{0.0};
  double l2{0.0};
  double external{0.0};
};

struct CorrelationReport
{
  std::size_t joined{0};
  LinearFit mms_fit;  // x = MMS, y = external score
  LinearFit l2_fit;   // x = mean L2, y = external score
  std::vector<ScatterPoint> scatter;
};

// Joins scored details with externally supplied (scenario id, score) pairs
// and fits both metrics against the external score. Throws kJoinTooSmall
// when fewer than three detail rows match.
CorrelationReport correlate_scores(
  const std::vector<ScoredDetail> & details,
  const std::vector<std::pair<std::string, double>> & external_scores);

// Renderers. Cells are fixed-point with two decimals; the column order is
// the table layout (avg, selected, heavy rain, construction, overtake,
// intersection, nighttime, snow, L2) plus trailing coverage counts.
std::string to_markdown(const EvaluationReport & report);
std::string to_csv(const EvaluationReport & report);
std::string to_markdown(const CoherenceReport & report);
std::string to_csv(const CoherenceReport & report);

// Machine-readable per-scenario rows of an evaluation report.
std::string detail_csv(const EvaluationReport & report);

// Scatter export for plotting a correlation report.
std::string scatter_csv(const CorrelationReport & report);

}  // namespace mms

#endif  // MMS__HARNESS_HPP_
