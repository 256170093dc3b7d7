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

// Batch evaluation front end. Exit codes: 0 success, 1 usage, 2 validation
// or processing failure, 3 partial coverage (suppressed by --allow-partial).

#include "mms/harness.hpp"
#include "mms/http_embedding.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace
{

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;
constexpr int kExitPartial = 3;

struct CommonOptions
{
  std::string corpus;
  std::string predictions;
  std::string split = "test";
  std::string out;
  std::string format = "markdown";
  std::string policy = "checkpoints";
  int workers = 1;
  bool allow_partial = false;
  bool mock_embeddings = false;
  std::string embedding_endpoint;
};

mms::Split parse_split(const std::string & name)
{
  const auto split = mms::split_from_name(name);
  if (!split) {
    throw mms::Error(mms::ErrorCode::kSchemaViolation, "unknown split \"" + name + "\"");
  }
  return *split;
}

mms::CheckpointPolicy parse_policy(const std::string & name)
{
  if (name == "checkpoints") return mms::CheckpointPolicy::kCheckpoints;
  if (name == "per-waypoint") return mms::CheckpointPolicy::kPerWaypoint;
  throw mms::Error(
    mms::ErrorCode::kSchemaViolation, "unknown checkpoint policy \"" + name + "\"");
}

mms::ReportFormat parse_format(const std::string & name)
{
  const auto format = mms::report_format_from_name(name);
  if (!format) {
    throw mms::Error(mms::ErrorCode::kSchemaViolation, "unknown format \"" + name + "\"");
  }
  return *format;
}

// stdout when no path was given.
void write_output(const std::string & text, const std::string & path)
{
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw mms::Error(mms::ErrorCode::kIoFailure, "cannot open " + path + " for writing");
  }
  out << text;
  if (!out.flush()) {
    throw mms::Error(mms::ErrorCode::kIoFailure, "short write to " + path);
  }
}

// Mock wins, then the explicit flag, then MMS_EMBEDDING_ENDPOINT. Nullptr
// means nothing was configured; callers treat that as a usage error.
std::unique_ptr<mms::EmbeddingProvider> make_provider(
  bool mock, const std::string & endpoint_flag)
{
  if (mock) return std::make_unique<mms::MockEmbeddingProvider>();
  std::string endpoint = endpoint_flag;
  if (endpoint.empty()) {
    if (const auto env = mms::HttpEmbeddingProvider::endpoint_from_environment()) {
      endpoint = *env;
    }
  }
  if (endpoint.empty()) return nullptr;
  return std::make_unique<mms::HttpEmbeddingProvider>(endpoint);
}

int provider_usage_error()
{
  std::cerr << "error: no embedding provider configured; pass --mock-embeddings, "
               "--embedding-endpoint, or set "
            << mms::kEmbeddingEndpointEnv << "\n";
  return kExitUsage;
}

void print_rejections(const std::vector<mms::PredictionRejection> & rejections)
{
  for (const mms::PredictionRejection & rejection : rejections) {
    std::cerr << "  line " << rejection.line << " scenario " << rejection.scenario_id
              << " model " << rejection.model_id << ": " << rejection.reason << "\n";
  }
}

std::vector<std::pair<std::string, double>> load_external_scores(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw mms::Error(mms::ErrorCode::kIoFailure, "cannot open " + path);
  }
  std::vector<std::pair<std::string, double>> scores;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || comma == 0) {
      throw mms::Error(
        mms::ErrorCode::kMalformedRecord,
        path + ":" + std::to_string(line_number) + ": expected scenario_id,score");
    }
    const std::string id = line.substr(0, comma);
    const std::string value_text = line.substr(comma + 1);
    char * end = nullptr;
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || (end != nullptr && *end != '\0')) {
      if (line_number == 1) continue;  // header row
      throw mms::Error(
        mms::ErrorCode::kMalformedRecord,
        path + ":" + std::to_string(line_number) + ": \"" + value_text +
          "\" is not a number");
    }
    scores.emplace_back(id, value);
  }
  return scores;
}

int cmd_validate(const CommonOptions & options)
{
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  std::array<std::size_t, 3> by_split{};
  for (const mms::Scenario & scenario : corpus) {
    by_split[static_cast<std::size_t>(scenario.split)] += 1;
  }
  std::cout << "corpus: " << corpus.size() << " scenarios (train "
            << by_split[static_cast<std::size_t>(mms::Split::kTrain)] << ", test "
            << by_split[static_cast<std::size_t>(mms::Split::kTest)] << ", val "
            << by_split[static_cast<std::size_t>(mms::Split::kVal)] << ")\n";

  if (options.predictions.empty()) return kExitSuccess;

  const mms::LoadedPredictions predictions =
    mms::load_predictions(options.predictions, corpus);
  std::cout << "predictions: " << predictions.records.size() << " records, "
            << predictions.rejections.size() << " rejected\n";
  if (!predictions.rejections.empty()) {
    print_rejections(predictions.rejections);
    return kExitFailure;
  }
  return kExitSuccess;
}

// Shared by score and report; report may attach a coherence block first.
int render_evaluation(
  const mms::EvaluationReport & report, const CommonOptions & options,
  const std::string & detail_out)
{
  const mms::ReportFormat format = parse_format(options.format);
  std::string text =
    format == mms::ReportFormat::kMarkdown ? mms::to_markdown(report) : mms::to_csv(report);
  if (format == mms::ReportFormat::kCsv && report.coherence) {
    text += "\n" + mms::to_csv(*report.coherence);
  }
  write_output(text, options.out);
  if (!detail_out.empty()) {
    write_output(mms::detail_csv(report), detail_out);
  }

  if (!report.complete()) {
    std::size_t rejected = 0;
    for (const mms::ReportRow & row : report.rows) rejected += row.rejected;
    std::cerr << "warning: " << rejected
              << " scenario/model pairs were not scored (see rejection rows)\n";
    return options.allow_partial ? kExitSuccess : kExitPartial;
  }
  return kExitSuccess;
}

int cmd_score(const CommonOptions & options, const std::string & detail_out)
{
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const mms::LoadedPredictions predictions =
    mms::load_predictions(options.predictions, corpus);
  const mms::EvaluationReport report = mms::score_predictions(
    corpus, predictions, parse_split(options.split), parse_policy(options.policy),
    options.workers);
  return render_evaluation(report, options, detail_out);
}

int cmd_coherence(const CommonOptions & options)
{
  const auto provider = make_provider(options.mock_embeddings, options.embedding_endpoint);
  if (!provider) return provider_usage_error();

  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const mms::LoadedPredictions predictions =
    mms::load_predictions(options.predictions, corpus);
  const mms::CoherenceReport report =
    mms::coherence_predictions(corpus, predictions, parse_split(options.split), *provider);

  const mms::ReportFormat format = parse_format(options.format);
  write_output(
    format == mms::ReportFormat::kMarkdown ? mms::to_markdown(report) : mms::to_csv(report),
    options.out);
  return kExitSuccess;
}

int cmd_report(const CommonOptions & options, const std::string & detail_out)
{
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const mms::LoadedPredictions predictions =
    mms::load_predictions(options.predictions, corpus);
  const mms::Split split = parse_split(options.split);
  mms::EvaluationReport report = mms::score_predictions(
    corpus, predictions, split, parse_policy(options.policy), options.workers);

  if (options.mock_embeddings || !options.embedding_endpoint.empty() ||
      mms::HttpEmbeddingProvider::endpoint_from_environment()) {
    const auto provider = make_provider(options.mock_embeddings, options.embedding_endpoint);
    report.coherence = mms::coherence_predictions(corpus, predictions, split, *provider);
  }
  return render_evaluation(report, options, detail_out);
}

int cmd_rollout(const CommonOptions & options)
{
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const mms::LoadedPredictions predictions =
    mms::load_predictions(options.predictions, corpus);
  if (!predictions.rejections.empty()) {
    std::cerr << "warning: " << predictions.rejections.size()
              << " lines were rejected at load and will not be rolled out\n";
    print_rejections(predictions.rejections);
  }
  const std::vector<mms::PredictionRecord> rolled =
    mms::rollout_predictions(corpus, predictions.records);
  mms::save_predictions(rolled, options.out);
  std::cerr << "wrote " << rolled.size() << " records to " << options.out << "\n";
  return kExitSuccess;
}

int cmd_augment(const CommonOptions & options)
{
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const mms::AugmentResult result = mms::augment_corpus(corpus);
  mms::save_corpus(result.scenarios, options.out);
  for (const mms::FlaggedScenario & flagged : result.flagged) {
    std::cerr << "flagged " << flagged.scenario_id << ": " << flagged.reason << "\n";
  }
  std::cerr << "wrote " << result.scenarios.size() << " scenarios to " << options.out << " ("
            << result.flagged.size() << " flagged)\n";
  return kExitSuccess;
}

int cmd_prompt(
  const CommonOptions & options, const std::string & mode_name,
  const std::vector<std::string> & example_ids)
{
  const auto mode = mms::prompt_mode_from_name(mode_name);
  if (!mode) {
    throw mms::Error(
      mms::ErrorCode::kUnknownModeString, "unknown prompt mode \"" + mode_name + "\"");
  }
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const std::vector<mms::RenderedPrompt> prompts =
    mms::render_corpus_prompts(corpus, parse_split(options.split), *mode, example_ids);

  std::filesystem::create_directories(options.out);
  for (const mms::RenderedPrompt & prompt : prompts) {
    write_output(
      prompt.text, (std::filesystem::path(options.out) / (prompt.scenario_id + ".prompt.txt"))
                     .string());
  }
  std::cerr << "wrote " << prompts.size() << " prompts to " << options.out << "\n";
  return kExitSuccess;
}

int cmd_correlate(
  const CommonOptions & options, const std::string & external_path,
  const std::string & scatter_out)
{
  const std::vector<mms::Scenario> corpus = mms::load_corpus(options.corpus);
  const mms::LoadedPredictions predictions =
    mms::load_predictions(options.predictions, corpus);
  const mms::EvaluationReport report = mms::score_predictions(
    corpus, predictions, parse_split(options.split), parse_policy(options.policy),
    options.workers);
  const mms::CorrelationReport correlation =
    mms::correlate_scores(report.details, load_external_scores(external_path));

  char buffer[160];
  std::string text = "pairs joined: " + std::to_string(correlation.joined) + "\n";
  std::snprintf(
    buffer, sizeof buffer, "MMS vs external: r=%.4f slope=%.4f intercept=%.4f\n",
    correlation.mms_fit.r, correlation.mms_fit.slope, correlation.mms_fit.intercept);
  text += buffer;
  std::snprintf(
    buffer, sizeof buffer, "L2 vs external:  r=%.4f slope=%.4f intercept=%.4f\n",
    correlation.l2_fit.r, correlation.l2_fit.slope, correlation.l2_fit.intercept);
  text += buffer;
  write_output(text, options.out);

  if (!scatter_out.empty()) {
    write_output(mms::scatter_csv(correlation), scatter_out);
  }
  return kExitSuccess;
}

void add_corpus_option(CLI::App * cmd, CommonOptions & options)
{
  cmd->add_option("--corpus", options.corpus, "Directory of scenario JSON files")->required();
}

void add_predictions_option(CLI::App * cmd, CommonOptions & options)
{
  cmd->add_option("--predictions", options.predictions, "Predictions JSONL file")->required();
}

void add_split_option(CLI::App * cmd, CommonOptions & options)
{
  cmd->add_option("--split", options.split, "Corpus split to evaluate (default test)")
    ->check(CLI::IsMember({"train", "test", "val"}));
}

void add_output_options(CLI::App * cmd, CommonOptions & options)
{
  cmd->add_option("--out", options.out, "Output path (default stdout)");
  cmd->add_option("--format", options.format, "Report format: markdown or csv")
    ->check(CLI::IsMember({"markdown", "csv"}));
}

void add_scoring_options(CLI::App * cmd, CommonOptions & options)
{
  cmd->add_option(
    "--checkpoint-policy", options.policy, "Similarity policy: checkpoints or per-waypoint")
    ->check(CLI::IsMember({"checkpoints", "per-waypoint"}));
  cmd->add_option("--workers", options.workers, "Scoring worker threads (default 1)")
    ->check(CLI::PositiveNumber);
  cmd->add_flag(
    "--allow-partial", options.allow_partial,
    "Exit 0 instead of 3 when predictions do not cover the whole split");
}

void add_provider_options(CLI::App * cmd, CommonOptions & options)
{
  cmd->add_flag(
    "--mock-embeddings", options.mock_embeddings, "Use the deterministic offline provider");
  cmd->add_option(
    "--embedding-endpoint", options.embedding_endpoint,
    std::string("Embedding server endpoint (or set ") + mms::kEmbeddingEndpointEnv + ")");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Trajectory evaluation toolkit"};
  app.require_subcommand(1);

  CommonOptions options;
  std::string detail_out;
  std::string mode_name = "zero_shot";
  std::vector<std::string> example_ids;
  std::string external_path;
  std::string scatter_out;

  CLI::App * validate = app.add_subcommand("validate", "Check corpus and prediction files");
  add_corpus_option(validate, options);
  validate->add_option("--predictions", options.predictions, "Predictions JSONL file");

  CLI::App * score = app.add_subcommand("score", "Score predictions against the references");
  add_corpus_option(score, options);
  add_predictions_option(score, options);
  add_split_option(score, options);
  add_output_options(score, options);
  add_scoring_options(score, options);
  score->add_option("--detail", detail_out, "Also write per-scenario rows as CSV");

  CLI::App * coherence =
    app.add_subcommand("coherence", "Compare trace commands with trajectory actions");
  add_corpus_option(coherence, options);
  add_predictions_option(coherence, options);
  add_split_option(coherence, options);
  add_output_options(coherence, options);
  add_provider_options(coherence, options);

  CLI::App * rollout =
    app.add_subcommand("rollout", "Fill trajectories by integrating parsed actions");
  add_corpus_option(rollout, options);
  add_predictions_option(rollout, options);
  rollout->add_option("--out", options.out, "Output predictions JSONL")->required();

  CLI::App * augment =
    app.add_subcommand("augment", "Add retimed wrong-speed references to a corpus");
  add_corpus_option(augment, options);
  augment->add_option("--out", options.out, "Output corpus directory")->required();

  CLI::App * prompt = app.add_subcommand("prompt", "Render one prompt file per scenario");
  add_corpus_option(prompt, options);
  add_split_option(prompt, options);
  prompt
    ->add_option(
      "--mode", mode_name, "zero_shot, few_shot, few_shot_cot, or few_shot_cot_kinematic")
    ->check(
      CLI::IsMember({"zero_shot", "few_shot", "few_shot_cot", "few_shot_cot_kinematic"}));
  prompt->add_option("--examples", example_ids, "Scenario ids for the in-context examples")
    ->delimiter(',');
  prompt->add_option("--out", options.out, "Output directory for .prompt.txt files")
    ->required();

  CLI::App * correlate =
    app.add_subcommand("correlate", "Correlate scores with an external metric");
  add_corpus_option(correlate, options);
  add_predictions_option(correlate, options);
  add_split_option(correlate, options);
  correlate->add_option("--external", external_path, "CSV of scenario_id,score")->required();
  correlate->add_option("--out", options.out, "Output path (default stdout)");
  correlate->add_option("--scatter", scatter_out, "Also write joined points as CSV");
  correlate
    ->add_option(
      "--checkpoint-policy", options.policy, "Similarity policy: checkpoints or per-waypoint")
    ->check(CLI::IsMember({"checkpoints", "per-waypoint"}));
  correlate->add_option("--workers", options.workers, "Scoring worker threads (default 1)")
    ->check(CLI::PositiveNumber);

  CLI::App * report =
    app.add_subcommand("report", "Full evaluation document, with coherence when configured");
  add_corpus_option(report, options);
  add_predictions_option(report, options);
  add_split_option(report, options);
  add_output_options(report, options);
  add_scoring_options(report, options);
  add_provider_options(report, options);
  report->add_option("--detail", detail_out, "Also write per-scenario rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(options);
    if (app.got_subcommand(score)) return cmd_score(options, detail_out);
    if (app.got_subcommand(coherence)) return cmd_coherence(options);
    if (app.got_subcommand(rollout)) return cmd_rollout(options);
    if (app.got_subcommand(augment)) return cmd_augment(options);
    if (app.got_subcommand(prompt)) return cmd_prompt(options, mode_name, example_ids);
    if (app.got_subcommand(correlate)) return cmd_correlate(options, external_path, scatter_out);
    if (app.got_subcommand(report)) return cmd_report(options, detail_out);
  } catch (const mms::Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
