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

#include "mms/harness.hpp"

#include "mms/actions.hpp"
#include "mms/augment.hpp"
#include "mms/prompt.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

namespace mms
{
namespace
{

std::string fixed2(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string fixed6(double value)
{
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::string csv_cell(const std::string & text)
{
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string md_cell(const std::string & text)
{
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

const char * score_case_label(ScoreCase c)
{
  switch (c) {
    case ScoreCase::kPastInconsistent: return "past_inconsistent";
    case ScoreCase::kCrashOrOffRoadMatch: return "crash_or_off_road";
    case ScoreCase::kScaledReference: return "scaled_reference";
    case ScoreCase::kUnmatched: return "unmatched";
  }
  return "unknown";
}

const char * checkpoint_policy_label(CheckpointPolicy policy)
{
  return policy == CheckpointPolicy::kCheckpoints ? "checkpoints" : "per-waypoint";
}

// Runs body(0..count) on up to `workers` threads. The work distribution is
// dynamic but each index writes only its own output slot, so results never
// depend on the thread count.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> & body)
{
  const std::size_t threads =
    workers <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  for (std::thread & t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

using GroupKey = std::pair<int, std::string>;  // (mode as int, model id)

// Per-group view of the predictions: the last record and the last rejection
// per scenario, restricted to the selected split.
struct GroupInput
{
  std::map<std::string, const PredictionRecord *> records;
  std::map<std::string, const PredictionRejection *> rejections;
};

std::vector<const Scenario *> split_members(const std::vector<Scenario> & corpus, Split split)
{
  std::vector<const Scenario *> members;
  for (const Scenario & scenario : corpus) {
    if (scenario.split == split) members.push_back(&scenario);
  }
  std::sort(members.begin(), members.end(), [](const Scenario * a, const Scenario * b) {
    return a->id < b->id;
  });
  return members;
}

std::map<GroupKey, GroupInput> group_predictions(
  const LoadedPredictions & predictions, const std::vector<const Scenario *> & members)
{
  std::map<std::string, const Scenario *> by_id;
  for (const Scenario * scenario : members) by_id.emplace(scenario->id, scenario);

  std::map<GroupKey, GroupInput> groups;
  for (const PredictionRecord & record : predictions.records) {
    if (!by_id.count(record.scenario_id)) continue;
    groups[{static_cast<int>(record.mode), record.model_id}].records[record.scenario_id] =
      &record;
  }
  for (const PredictionRejection & rejection : predictions.rejections) {
    if (!by_id.count(rejection.scenario_id)) continue;
    groups[{static_cast<int>(rejection.mode), rejection.model_id}]
      .rejections[rejection.scenario_id] = &rejection;
  }
  return groups;
}

// Why a scenario contributed nothing, preferring a loader-supplied reason.
std::string missing_reason(const GroupInput & group, const std::string & scenario_id)
{
  const auto it = group.rejections.find(scenario_id);
  if (it != group.rejections.end()) return it->second->reason;
  return "no prediction for this scenario";
}

ReasoningTrace trace_from_fields(const ActionFields & fields)
{
  ReasoningTrace trace;
  trace.situational_awareness = fields.situational_awareness;
  trace.accel_first_3s = fields.acceleration_first_3s;
  trace.steer_first_3s = fields.steering_first_3s;
  trace.accel_last_2s = fields.acceleration_last_2s;
  trace.steer_last_2s = fields.steering_last_2s;
  trace.language = Language::kEn;
  return trace;
}

std::pair<std::string, MediaKind> media_for(const Scenario & scenario)
{
  auto it = scenario.media.find("image");
  if (it != scenario.media.end()) return {it->second, MediaKind::kImage};
  it = scenario.media.find("video");
  if (it != scenario.media.end()) return {it->second, MediaKind::kVideo};
  throw Error(
    ErrorCode::kMissingRequiredField,
    "scenario " + scenario.id + " has neither image nor video media");
}

void append_rejections_table(
  std::ostringstream & out, const char * heading, const std::vector<ReportRejection> & rows)
{
  if (rows.empty()) return;
  out << "\n## " << heading << "\n\n";
  out << "| Inference | Model | Scenario | Reason |\n";
  out << "| --- | --- | --- | --- |\n";
  for (const ReportRejection & row : rows) {
    out << "| " << prompt_mode_name(row.mode) << " | " << md_cell(row.model_id) << " | "
        << md_cell(row.scenario_id) << " | " << md_cell(row.reason) << " |\n";
  }
}

void append_coherence_section(std::ostringstream & out, const CoherenceReport & report)
{
  out << "| Inference | Model | avg 0-5 s | accel 0-3 s | accel 3-5 s | steer 0-3 s | "
         "steer 3-5 s | scored | excluded |\n";
  out << "| --- | --- | ---: | ---: | ---: | ---: | ---: | ---: | ---: |\n";
  for (const CoherenceRow & row : report.rows) {
    out << "| " << prompt_mode_name(row.mode) << " | " << md_cell(row.model_id) << " | "
        << fixed2(row.overall) << " | " << fixed2(row.accel_first) << " | "
        << fixed2(row.accel_last) << " | " << fixed2(row.steer_first) << " | "
        << fixed2(row.steer_last) << " | " << row.scored << " | " << row.excluded << " |\n";
  }
  append_rejections_table(out, "Coherence exclusions", report.exclusions);
}

std::string type_csv_token(ScenarioType type)
{
  std::string token = report_type_label(type);
  std::replace(token.begin(), token.end(), ' ', '_');
  return token;
}

}  // namespace

const char * report_format_name(ReportFormat format)
{
  return format == ReportFormat::kMarkdown ? "markdown" : "csv";
}

std::optional<ReportFormat> report_format_from_name(const std::string & name)
{
  if (name == "markdown") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

const std::array<ScenarioType, kScenarioTypeCount> & report_type_order()
{
  static const std::array<ScenarioType, kScenarioTypeCount> order = {
    ScenarioType::kSpecificallySelected, ScenarioType::kHeavyRain,
    ScenarioType::kConstructionZone,     ScenarioType::kOvertakeLaneChange,
    ScenarioType::kIntersection,         ScenarioType::kNighttime,
    ScenarioType::kSnowWintryMix,
  };
  return order;
}

const char * report_type_label(ScenarioType type)
{
  switch (type) {
    case ScenarioType::kSpecificallySelected: return "selected";
    case ScenarioType::kNighttime: return "nighttime";
    case ScenarioType::kSnowWintryMix: return "snow";
    case ScenarioType::kHeavyRain: return "heavy rain";
    case ScenarioType::kConstructionZone: return "construction";
    case ScenarioType::kOvertakeLaneChange: return "overtake";
    case ScenarioType::kIntersection: return "intersection";
  }
  return "unknown";
}

bool EvaluationReport::complete() const
{
  if (rows.empty()) return split_size == 0;
  return std::all_of(
    rows.begin(), rows.end(), [](const ReportRow & row) { return row.rejected == 0; });
}

EvaluationReport score_predictions(
  const std::vector<Scenario> & corpus, const LoadedPredictions & predictions, Split split,
  CheckpointPolicy policy, int workers)
{
  const std::vector<const Scenario *> members = split_members(corpus, split);
  const std::map<GroupKey, GroupInput> groups = group_predictions(predictions, members);

  EvaluationReport report;
  report.split = split;
  report.split_size = members.size();
  report.policy = policy;

  struct Task
  {
    const Scenario * scenario;
    const PredictionRecord * record;
  };
  struct Slot
  {
    const Scenario * scenario;
    std::optional<std::size_t> task;  // index into tasks; reason used otherwise
    std::string reason;
  };
  struct PendingGroup
  {
    PromptMode mode;
    std::string model_id;
    std::vector<Slot> slots;
  };

  std::vector<Task> tasks;
  std::vector<PendingGroup> pending;
  for (const auto & [key, group] : groups) {
    PendingGroup p;
    p.mode = static_cast<PromptMode>(key.first);
    p.model_id = key.second;
    for (const Scenario * scenario : members) {
      const auto it = group.records.find(scenario->id);
      if (it == group.records.end()) {
        p.slots.push_back({scenario, std::nullopt, missing_reason(group, scenario->id)});
      } else if (!it->second->trajectory) {
        p.slots.push_back(
          {scenario, std::nullopt, "record carries no trajectory; run rollout first"});
      } else {
        p.slots.push_back({scenario, tasks.size(), {}});
        tasks.push_back({scenario, it->second});
      }
    }
    pending.push_back(std::move(p));
  }

  std::vector<std::optional<std::pair<MmsResult, L2Error>>> outcomes(tasks.size());
  std::vector<std::string> failures(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    const Task & task = tasks[i];
    try {
      MmsResult mms =
        score(*task.record->trajectory, task.scenario->past, task.scenario->references, policy);
      L2Error l2 = l2_error(*task.record->trajectory, task.scenario->expert());
      outcomes[i] = std::make_pair(std::move(mms), l2);
    } catch (const Error & e) {
      failures[i] = e.what();
    }
  });

  for (const PendingGroup & group : pending) {
    ReportRow row;
    row.model_id = group.model_id;
    row.mode = group.mode;
    double mms_sum = 0.0;
    double l2_sum = 0.0;
    std::array<double, kScenarioTypeCount> type_sum{};
    std::array<std::size_t, kScenarioTypeCount> type_count{};

    for (const Slot & slot : group.slots) {
      std::string reason = slot.reason;
      if (slot.task && outcomes[*slot.task]) {
        const auto & [mms, l2] = *outcomes[*slot.task];
        report.details.push_back(
          {group.model_id, group.mode, slot.scenario->id, slot.scenario->type, mms, l2});
        row.scored += 1;
        mms_sum += mms.score;
        l2_sum += l2.mean;
        const auto type_index = static_cast<std::size_t>(slot.scenario->type);
        type_sum[type_index] += mms.score;
        type_count[type_index] += 1;
        continue;
      }
      if (slot.task) reason = failures[*slot.task];
      report.rejections.push_back({group.model_id, group.mode, slot.scenario->id, reason});
      row.rejected += 1;
    }

    if (row.scored > 0) {
      row.avg_mms = mms_sum / static_cast<double>(row.scored);
      row.avg_l2 = l2_sum / static_cast<double>(row.scored);
    }
    for (int t = 0; t < kScenarioTypeCount; ++t) {
      if (type_count[t] > 0) {
        row.per_type[t] = type_sum[t] / static_cast<double>(type_count[t]);
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

CoherenceReport coherence_predictions(
  const std::vector<Scenario> & corpus, const LoadedPredictions & predictions, Split split,
  EmbeddingProvider & provider)
{
  const std::vector<const Scenario *> members = split_members(corpus, split);
  const std::map<GroupKey, GroupInput> groups = group_predictions(predictions, members);

  LanguageCentroids centroids;
  centroids[Language::kEn] = build_centroids(provider, builtin_phrases(), Language::kEn);

  CoherenceReport report;
  std::size_t total_scored = 0;
  for (const auto & [key, group] : groups) {
    CoherenceRow row;
    row.mode = static_cast<PromptMode>(key.first);
    row.model_id = key.second;

    std::vector<ReasoningTrace> traces;
    std::vector<Trajectory> plans;
    std::vector<std::string> scenario_ids;
    const auto exclude = [&](const std::string & scenario_id, const std::string & reason) {
      report.exclusions.push_back({row.model_id, row.mode, scenario_id, reason});
      row.excluded += 1;
    };

    for (const Scenario * scenario : members) {
      const auto it = group.records.find(scenario->id);
      if (it == group.records.end()) {
        exclude(scenario->id, missing_reason(group, scenario->id));
        continue;
      }
      const PredictionRecord & record = *it->second;
      std::optional<ActionFields> fields = record.actions;
      if (!fields && record.raw_completion) {
        try {
          fields = parse_actions(*record.raw_completion).fields;
        } catch (const Error & e) {
          exclude(scenario->id, e.what());
          continue;
        }
      }
      if (!fields) {
        exclude(scenario->id, "record carries no parsed actions");
        continue;
      }
      if (!record.trajectory) {
        exclude(scenario->id, "record carries no trajectory; run rollout first");
        continue;
      }
      traces.push_back(trace_from_fields(*fields));
      plans.push_back(*record.trajectory);
      scenario_ids.push_back(scenario->id);
    }

    if (!traces.empty()) {
      const CoherenceResult result = coherence_score(traces, plans, provider, centroids);
      for (const ExcludedScenario & excluded : result.excluded) {
        exclude(scenario_ids[excluded.index], excluded.reason);
      }
      row.scored = result.scored;
      row.overall = result.overall;
      row.accel_first = result.accel_first_rate;
      row.accel_last = result.accel_last_rate;
      row.steer_first = result.steer_first_rate;
      row.steer_last = result.steer_last_rate;
    }
    total_scored += row.scored;
    report.rows.push_back(std::move(row));
  }

  if (total_scored == 0) {
    throw Error(
      ErrorCode::kMissingTraces, "no prediction carried both actions and a trajectory");
  }
  return report;
}

std::vector<PredictionRecord> rollout_predictions(
  const std::vector<Scenario> & corpus, const std::vector<PredictionRecord> & records)
{
  std::map<std::string, const Scenario *> by_id;
  for (const Scenario & scenario : corpus) by_id.emplace(scenario.id, &scenario);

  std::vector<PredictionRecord> out;
  out.reserve(records.size());
  for (const PredictionRecord & record : records) {
    if (!record.actions) {
      throw Error(
        ErrorCode::kMissingActions,
        "scenario " + record.scenario_id + " (model " + record.model_id +
          "): record has no parsed actions");
    }
    const auto it = by_id.find(record.scenario_id);
    if (it == by_id.end()) {
      throw Error(
        ErrorCode::kSchemaViolation, "scenario " + record.scenario_id + " is not in the corpus");
    }
    PredictionRecord updated = record;
    updated.trajectory = rollout(it->second->past, record.actions->actions);
    out.push_back(std::move(updated));
  }
  return out;
}

AugmentResult augment_corpus(const std::vector<Scenario> & corpus)
{
  constexpr std::pair<double, const char *> kFactors[] = {{0.8, "0.8"}, {1.2, "1.2"}};

  AugmentResult result;
  result.scenarios.reserve(corpus.size());
  for (const Scenario & scenario : corpus) {
    const auto expert_index = scenario.references.expert_index();
    if (!expert_index) {
      result.flagged.push_back({scenario.id, "no expert reference to retime"});
      result.scenarios.push_back(scenario);
      continue;
    }

    std::vector<LabeledReference> entries;
    for (const LabeledReference & reference : scenario.references.entries()) {
      if (reference.source.rfind("augment:", 0) == 0) continue;
      entries.push_back(reference);
    }
    const Trajectory & expert = scenario.references[*expert_index].trajectory;
    try {
      for (const auto & [factor, tag] : kFactors) {
        entries.push_back(
          {ReferenceCategory::kWrongSpeed, retime_speed(expert, factor),
           std::string("augment:retime:") + tag});
      }
    } catch (const Error & e) {
      result.flagged.push_back({scenario.id, e.what()});
      result.scenarios.push_back(scenario);
      continue;
    }

    Scenario updated = scenario;
    updated.references = ReferenceSet(std::move(entries));
    result.scenarios.push_back(std::move(updated));
  }
  return result;
}

std::vector<RenderedPrompt> render_corpus_prompts(
  const std::vector<Scenario> & corpus, Split split, PromptMode mode,
  const std::vector<std::string> & example_ids)
{
  std::map<std::string, const Scenario *> by_id;
  for (const Scenario & scenario : corpus) by_id.emplace(scenario.id, &scenario);

  std::vector<FewShotExample> examples;
  examples.reserve(example_ids.size());
  for (const std::string & id : example_ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kSchemaViolation, "example scenario " + id + " is not in the corpus");
    }
    const Scenario & scenario = *it->second;
    examples.push_back(
      {scenario.id, media_for(scenario).first, scenario.past, scenario.instruction,
       scenario.traces.empty() ? std::nullopt : std::make_optional(scenario.traces.front()),
       scenario.expert()});
  }

  std::vector<RenderedPrompt> prompts;
  for (const Scenario * scenario : split_members(corpus, split)) {
    const auto [media, kind] = media_for(*scenario);
    const PromptQuery query{media, kind, scenario->past, scenario->instruction};
    prompts.push_back({scenario->id, render_prompt(query, mode, examples)});
  }
  return prompts;
}

CorrelationReport correlate_scores(
  const std::vector<ScoredDetail> & details,
  const std::vector<std::pair<std::string, double>> & external_scores)
{
  std::map<std::string, double> external;
  for (const auto & [scenario_id, value] : external_scores) external[scenario_id] = value;

  CorrelationReport report;
  std::vector<std::pair<double, double>> mms_pairs;
  std::vector<std::pair<double, double>> l2_pairs;
  for (const ScoredDetail & detail : details) {
    const auto it = external.find(detail.scenario_id);
    if (it == external.end()) continue;
    mms_pairs.emplace_back(detail.mms.score, it->second);
    l2_pairs.emplace_back(detail.l2.mean, it->second);
    report.scatter.push_back(
      {detail.scenario_id, detail.model_id, detail.mode, detail.mms.score, detail.l2.mean,
       it->second});
  }
  report.joined = report.scatter.size();
  if (report.joined < 3) {
    throw Error(
      ErrorCode::kJoinTooSmall, "only " + std::to_string(report.joined) +
                                  " scored scenarios matched the external scores; need 3");
  }
  report.mms_fit = pearson_and_fit(mms_pairs);
  report.l2_fit = pearson_and_fit(l2_pairs);
  return report;
}

std::string to_markdown(const EvaluationReport & report)
{
  std::ostringstream out;
  out << "# Trajectory evaluation\n\n";
  out << "- split: " << split_name(report.split) << " (" << report.split_size
      << " scenarios)\n";
  out << "- checkpoint policy: " << checkpoint_policy_label(report.policy) << "\n\n";

  out << "| Inference | Model | MMS avg |";
  for (const ScenarioType type : report_type_order()) out << ' ' << report_type_label(type)
                                                          << " |";
  out << " L2 | scored | rejected |\n";
  out << "| --- | --- |";
  for (int i = 0; i < kScenarioTypeCount + 4; ++i) out << " ---: |";
  out << "\n";
  for (const ReportRow & row : report.rows) {
    out << "| " << prompt_mode_name(row.mode) << " | " << md_cell(row.model_id) << " | "
        << fixed2(row.avg_mms) << " |";
    for (const ScenarioType type : report_type_order()) {
      const auto & cell = row.per_type[static_cast<std::size_t>(type)];
      out << ' ' << (cell ? fixed2(*cell) : std::string("-")) << " |";
    }
    out << ' ' << fixed2(row.avg_l2) << " | " << row.scored << " | " << row.rejected << " |\n";
  }

  if (report.coherence) {
    out << "\n## Semantic coherence\n\n";
    append_coherence_section(out, *report.coherence);
  }

  append_rejections_table(out, "Rejections", report.rejections);

  if (!report.details.empty()) {
    out << "\n## Scenario detail\n\n";
    out << "| Inference | Model | Scenario | Type | MMS | Case | Category | Similarity | "
           "Comfort | L2 |\n";
    out << "| --- | --- | --- | --- | ---: | --- | --- | ---: | ---: | ---: |\n";
    for (const ScoredDetail & detail : report.details) {
      out << "| " << prompt_mode_name(detail.mode) << " | " << md_cell(detail.model_id) << " | "
          << md_cell(detail.scenario_id) << " | " << report_type_label(detail.type) << " | "
          << fixed2(detail.mms.score) << " | " << score_case_label(detail.mms.case_applied)
          << " | "
          << (detail.mms.matched_category ? reference_category_name(*detail.mms.matched_category)
                                          : "-")
          << " | " << fixed2(detail.mms.similarity_s) << " | " << detail.mms.comfort.value
          << " | " << fixed2(detail.l2.mean) << " |\n";
    }
  }
  return out.str();
}

std::string to_csv(const EvaluationReport & report)
{
  std::ostringstream out;
  out << "model_id,inference_mode,avg_mms";
  for (const ScenarioType type : report_type_order()) out << ',' << type_csv_token(type);
  out << ",avg_l2,scored,rejected\n";
  for (const ReportRow & row : report.rows) {
    out << csv_cell(row.model_id) << ',' << prompt_mode_name(row.mode) << ','
        << fixed2(row.avg_mms);
    for (const ScenarioType type : report_type_order()) {
      const auto & cell = row.per_type[static_cast<std::size_t>(type)];
      out << ',' << (cell ? fixed2(*cell) : std::string());
    }
    out << ',' << fixed2(row.avg_l2) << ',' << row.scored << ',' << row.rejected << '\n';
  }
  return out.str();
}

std::string to_markdown(const CoherenceReport & report)
{
  std::ostringstream out;
  out << "# Semantic coherence\n\n";
  append_coherence_section(out, report);
  return out.str();
}

std::string to_csv(const CoherenceReport & report)
{
  std::ostringstream out;
  out << "model_id,inference_mode,avg,accel_first_3s,accel_last_2s,steer_first_3s,"
         "steer_last_2s,scored,excluded\n";
  for (const CoherenceRow & row : report.rows) {
    out << csv_cell(row.model_id) << ',' << prompt_mode_name(row.mode) << ','
        << fixed2(row.overall) << ',' << fixed2(row.accel_first) << ',' << fixed2(row.accel_last)
        << ',' << fixed2(row.steer_first) << ',' << fixed2(row.steer_last) << ',' << row.scored
        << ',' << row.excluded << '\n';
  }
  return out.str();
}

std::string detail_csv(const EvaluationReport & report)
{
  std::ostringstream out;
  out << "model_id,inference_mode,scenario_id,scenario_type,mms,score_case,matched_category,"
         "similarity,comfort_penalty,jerk_flag,tortuosity_flag,l2_mean,l2_final\n";
  for (const ScoredDetail & detail : report.details) {
    out << csv_cell(detail.model_id) << ',' << prompt_mode_name(detail.mode) << ','
        << csv_cell(detail.scenario_id) << ',' << scenario_type_name(detail.type) << ','
        << fixed6(detail.mms.score) << ',' << score_case_label(detail.mms.case_applied) << ','
        << (detail.mms.matched_category ? reference_category_name(*detail.mms.matched_category)
                                        : "")
        << ',' << fixed6(detail.mms.similarity_s) << ',' << detail.mms.comfort.value << ','
        << (detail.mms.comfort.jerk_flag ? 1 : 0) << ','
        << (detail.mms.comfort.tortuosity_flag ? 1 : 0) << ',' << fixed6(detail.l2.mean) << ','
        << fixed6(detail.l2.final_waypoint) << '\n';
  }
  return out.str();
}

std::string scatter_csv(const CorrelationReport & report)
{
  std::ostringstream out;
  out << "scenario_id,model_id,inference_mode,mms,l2,external_score\n";
  for (const ScatterPoint & point : report.scatter) {
    out << csv_cell(point.scenario_id) << ',' << csv_cell(point.model_id) << ','
        << prompt_mode_name(point.mode) << ',' << fixed6(point.mms) << ',' << fixed6(point.l2)
        << ',' << fixed6(point.external) << '\n';
  }
  return out.str();
}

}  // namespace mms
