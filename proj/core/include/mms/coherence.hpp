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

#ifndef MMS__COHERENCE_HPP_
#define MMS__COHERENCE_HPP_

#include "mms/actions.hpp"
#include "mms/error.hpp"
#include "mms/trajectory.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mms
{

enum class Language { kEn, kEs, kZh };

const char * language_name(Language language);
std::optional<Language> language_from_name(const std::string & name);

// One reference phrase describing a driving action, in one language.
struct PhraseEntry
{
  std::variant<AccelClass, SteerClass> action;
  Language language{Language::kEn};
  std::string phrase;
};

// Built-in reference phrases, at least three per class per language. The
// same table ships as data/action_phrases.tsv so it can be swapped without
// recompiling.
const std::vector<PhraseEntry> & builtin_phrases();

// Reads a tab-separated phrase file with columns class, language, phrase.
// Lines that are empty or start with # are skipped.
std::vector<PhraseEntry> load_phrase_file(const std::string & path);

class Embedding
{
public:
  Embedding() = default;
  explicit Embedding(std::vector<double> values);

  const std::vector<double> & values() const { return values_; }
  std::size_t dimension() const { return values_.size(); }
  double norm() const { return norm_; }

private:
  std::vector<double> values_;
  double norm_{0.0};
};

double cosine_similarity(const Embedding & a, const Embedding & b);

class EmbeddingProvider
{
public:
  virtual ~EmbeddingProvider() = default;

  // Maps text to a fixed-dimension vector. Deterministic for identical
  // input within a session. Throws kZeroVector for empty text,
  // kProviderUnavailable when the backend cannot answer, and
  // kDimensionMismatch when the backend changes dimension mid-session.
  virtual Embedding embed(const std::string & text) = 0;

  virtual std::string model_id() const = 0;
};

// Deterministic offline provider. Every phrase of the built-in table (or of
// the table passed in) is pinned to a class axis: texts containing a pinned
// phrase embed as that class direction plus small text-dependent noise, so
// paraphrases built from the table land in the right class while unrelated
// texts get stable pseudo-random vectors.
class MockEmbeddingProvider : public EmbeddingProvider
{
public:
  static constexpr std::size_t kDimension = 64;

  MockEmbeddingProvider();
  explicit MockEmbeddingProvider(const std::vector<PhraseEntry> & pinned);

  Embedding embed(const std::string & text) override;
  std::string model_id() const override { return "mock-hash-64"; }

private:
  struct PinnedPhrase
  {
    std::string normalized;
    std::size_t axis_index;
  };

  std::vector<PinnedPhrase> pinned_;
};

struct ClassCentroid
{
  std::variant<AccelClass, SteerClass> action;
  Embedding centroid;
};

// One centroid per class, in enum order, for a single language.
struct CentroidSet
{
  std::vector<ClassCentroid> accel;
  std::vector<ClassCentroid> steer;
};

using LanguageCentroids = std::map<Language, CentroidSet>;

// Embeds every phrase of the requested language and averages per class,
// renormalizing the mean to unit length. Each of the ten classes needs at
// least three phrases (kTooFewPhrases otherwise).
CentroidSet build_centroids(
  EmbeddingProvider & provider, const std::vector<PhraseEntry> & phrases,
  Language language);

// Argmax of cosine similarity over the centroids. Exact ties resolve to the
// class that comes first in enum order, acceleration axis before steering.
std::variant<AccelClass, SteerClass> rocchio_classify(
  const Embedding & z, const std::vector<ClassCentroid> & centroids);

// Answers to the interval questions of one annotated or generated trace.
struct ReasoningTrace
{
  std::string situational_awareness;
  std::string accel_first_3s;
  std::string steer_first_3s;
  std::string accel_last_2s;
  std::string steer_last_2s;
  Language language{Language::kEn};
};

// Whether the trace-described action matched the trajectory-derived one,
// per interval and axis.
struct ScenarioCoherence
{
  bool accel_first{false};
  bool accel_last{false};
  bool steer_first{false};
  bool steer_last{false};
};

struct ExcludedScenario
{
  std::size_t index;
  std::string reason;
};

struct CoherenceResult
{
  // Aligned with the input order; nullopt where the scenario was excluded.
  std::vector<std::optional<ScenarioCoherence>> per_scenario;
  std::vector<ExcludedScenario> excluded;
  std::size_t scored{0};
  double accel_first_rate{0.0};
  double accel_last_rate{0.0};
  double steer_first_rate{0.0};
  double steer_last_rate{0.0};
  // Mean of the four cell rates.
  double overall{0.0};
};

// Classifies each trace segment by Rocchio against the centroids of the
// trace's language and compares with the actions classified from the paired
// trajectory. Scenarios whose segments cannot be embedded are excluded and
// reported; rates are over the scored scenarios (zero when none scored).
CoherenceResult coherence_score(
  const std::vector<ReasoningTrace> & traces, const std::vector<Trajectory> & plans,
  EmbeddingProvider & provider, const LanguageCentroids & centroids);

}  // namespace mms

#endif  // MMS__COHERENCE_HPP_
