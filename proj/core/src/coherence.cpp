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

#include "mms/coherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace mms
{

namespace
{

// ASCII-only case folding and punctuation stripping; bytes with the high bit
// set belong to multi-byte UTF-8 sequences and pass through untouched.
std::string normalize_text(const std::string & text)
{
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char c : text) {
    const unsigned char b = static_cast<unsigned char>(c);
    char mapped;
    if (b >= 0x80) {
      mapped = c;
    } else if (b >= 'A' && b <= 'Z') {
      mapped = static_cast<char>(b - 'A' + 'a');
    } else if ((b >= 'a' && b <= 'z') || (b >= '0' && b <= '9')) {
      mapped = c;
    } else {
      // Whitespace and ASCII punctuation both act as separators.
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) {
      out.push_back(' ');
    }
    pending_space = false;
    out.push_back(mapped);
  }
  return out;
}

std::uint64_t fnv1a(const std::string & text)
{
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t splitmix64(std::uint64_t & state)
{
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t class_axis_index(const std::variant<AccelClass, SteerClass> & action)
{
  if (std::holds_alternative<AccelClass>(action)) {
    return static_cast<std::size_t>(std::get<AccelClass>(action));
  }
  return 5 + static_cast<std::size_t>(std::get<SteerClass>(action));
}

// Fixed class order for tie-breaking: acceleration classes before steering
// classes, enum order within each axis.
std::size_t class_rank(const std::variant<AccelClass, SteerClass> & action)
{
  return class_axis_index(action);
}

std::string class_label(const std::variant<AccelClass, SteerClass> & action)
{
  if (std::holds_alternative<AccelClass>(action)) {
    return accel_class_name(std::get<AccelClass>(action));
  }
  return steer_class_name(std::get<SteerClass>(action));
}

}  // namespace

Embedding::Embedding(std::vector<double> values) : values_(std::move(values))
{
  double sum = 0.0;
  for (const double v : values_) {
    sum += v * v;
  }
  norm_ = std::sqrt(sum);
}

double cosine_similarity(const Embedding & a, const Embedding & b)
{
  if (a.dimension() != b.dimension()) {
    throw Error(
      ErrorCode::kDimensionMismatch, std::to_string(a.dimension()) + " vs " +
                                       std::to_string(b.dimension()) + " dimensions");
  }
  if (a.norm() <= 0.0 || b.norm() <= 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero-norm vector is undefined");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    dot += a.values()[i] * b.values()[i];
  }
  return dot / (a.norm() * b.norm());
}

MockEmbeddingProvider::MockEmbeddingProvider() : MockEmbeddingProvider(builtin_phrases()) {}

MockEmbeddingProvider::MockEmbeddingProvider(const std::vector<PhraseEntry> & pinned)
{
  pinned_.reserve(pinned.size());
  for (const auto & entry : pinned) {
    pinned_.push_back(PinnedPhrase{normalize_text(entry.phrase), class_axis_index(entry.action)});
  }
  // Longest phrase first, so the most specific pinned phrase contained in a
  // text decides its class direction.
  std::stable_sort(pinned_.begin(), pinned_.end(), [](const auto & a, const auto & b) {
    return a.normalized.size() > b.normalized.size();
  });
}

Embedding MockEmbeddingProvider::embed(const std::string & text)
{
  const std::string normalized = normalize_text(text);
  if (normalized.empty()) {
    throw Error(ErrorCode::kZeroVector, "text has no content to embed");
  }

  // Stable pseudo-random direction from the text itself.
  std::uint64_t state = fnv1a(normalized) ^ 0x6d6d732d636f6865ULL;
  std::array<double, kDimension> v{};
  double sum = 0.0;
  for (auto & value : v) {
    value = 2.0 * ((splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
    sum += value * value;
  }
  const double noise_norm = std::sqrt(sum);
  const double noise_scale = noise_norm > 1e-12 ? 0.35 / noise_norm : 0.0;
  for (auto & value : v) {
    value *= noise_scale;
  }

  for (const auto & phrase : pinned_) {
    if (normalized.find(phrase.normalized) != std::string::npos) {
      v[phrase.axis_index] += 3.0;
      break;
    }
  }

  std::vector<double> values(v.begin(), v.end());
  Embedding raw(std::move(values));
  std::vector<double> unit(raw.values());
  for (auto & value : unit) {
    value /= raw.norm();
  }
  return Embedding(std::move(unit));
}

CentroidSet build_centroids(
  EmbeddingProvider & provider, const std::vector<PhraseEntry> & phrases, Language language)
{
  std::array<std::vector<Embedding>, 10> per_class;
  for (const auto & entry : phrases) {
    if (entry.language != language) {
      continue;
    }
    per_class[class_axis_index(entry.action)].push_back(provider.embed(entry.phrase));
  }

  CentroidSet set;
  for (std::size_t index = 0; index < per_class.size(); ++index) {
    const std::variant<AccelClass, SteerClass> action =
      index < 5 ? std::variant<AccelClass, SteerClass>(static_cast<AccelClass>(index))
                : std::variant<AccelClass, SteerClass>(static_cast<SteerClass>(index - 5));
    const auto & members = per_class[index];
    if (members.size() < 3) {
      throw Error(
        ErrorCode::kTooFewPhrases, class_label(action) + " has " +
                                     std::to_string(members.size()) + " " +
                                     language_name(language) + " phrases, need 3");
    }
    const std::size_t dim = members.front().dimension();
    std::vector<double> mean(dim, 0.0);
    for (const auto & member : members) {
      if (member.dimension() != dim) {
        throw Error(ErrorCode::kDimensionMismatch, "provider changed dimension mid-build");
      }
      for (std::size_t d = 0; d < dim; ++d) {
        mean[d] += member.values()[d];
      }
    }
    for (auto & value : mean) {
      value /= static_cast<double>(members.size());
    }
    Embedding raw(std::move(mean));
    if (raw.norm() <= 0.0) {
      throw Error(ErrorCode::kZeroVector, class_label(action) + " phrases average to zero");
    }
    std::vector<double> unit(raw.values());
    for (auto & value : unit) {
      value /= raw.norm();
    }
    ClassCentroid centroid{action, Embedding(std::move(unit))};
    if (index < 5) {
      set.accel.push_back(std::move(centroid));
    } else {
      set.steer.push_back(std::move(centroid));
    }
  }
  return set;
}

std::variant<AccelClass, SteerClass> rocchio_classify(
  const Embedding & z, const std::vector<ClassCentroid> & centroids)
{
  if (centroids.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet, "no centroids to classify against");
  }
  const ClassCentroid * best = nullptr;
  double best_cos = 0.0;
  for (const auto & candidate : centroids) {
    const double cos = cosine_similarity(z, candidate.centroid);
    if (
      best == nullptr || cos > best_cos ||
      (cos == best_cos && class_rank(candidate.action) < class_rank(best->action))) {
      best = &candidate;
      best_cos = cos;
    }
  }
  return best->action;
}

CoherenceResult coherence_score(
  const std::vector<ReasoningTrace> & traces, const std::vector<Trajectory> & plans,
  EmbeddingProvider & provider, const LanguageCentroids & centroids)
{
  if (traces.size() != plans.size()) {
    throw Error(
      ErrorCode::kLengthMismatch, std::to_string(traces.size()) + " traces vs " +
                                    std::to_string(plans.size()) + " plans");
  }

  CoherenceResult result;
  result.per_scenario.resize(traces.size());
  std::size_t accel_first = 0, accel_last = 0, steer_first = 0, steer_last = 0;

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const ReasoningTrace & trace = traces[i];
    const IntervalActions derived = classify_intervals(plans[i]);
    try {
      const auto it = centroids.find(trace.language);
      if (it == centroids.end()) {
        throw Error(
          ErrorCode::kEmptyReferenceSet,
          std::string("no centroids for language ") + language_name(trace.language));
      }
      const CentroidSet & set = it->second;

      ScenarioCoherence cells;
      cells.accel_first =
        rocchio_classify(provider.embed(trace.accel_first_3s), set.accel) ==
        std::variant<AccelClass, SteerClass>(derived.first_3s.accel);
      cells.accel_last =
        rocchio_classify(provider.embed(trace.accel_last_2s), set.accel) ==
        std::variant<AccelClass, SteerClass>(derived.last_2s.accel);
      cells.steer_first =
        rocchio_classify(provider.embed(trace.steer_first_3s), set.steer) ==
        std::variant<AccelClass, SteerClass>(derived.first_3s.steer);
      cells.steer_last =
        rocchio_classify(provider.embed(trace.steer_last_2s), set.steer) ==
        std::variant<AccelClass, SteerClass>(derived.last_2s.steer);

      result.per_scenario[i] = cells;
      ++result.scored;
      accel_first += cells.accel_first ? 1 : 0;
      accel_last += cells.accel_last ? 1 : 0;
      steer_first += cells.steer_first ? 1 : 0;
      steer_last += cells.steer_last ? 1 : 0;
    } catch (const Error & e) {
      result.excluded.push_back(ExcludedScenario{i, e.what()});
    }
  }

  if (result.scored > 0) {
    const double n = static_cast<double>(result.scored);
    result.accel_first_rate = static_cast<double>(accel_first) / n;
    result.accel_last_rate = static_cast<double>(accel_last) / n;
    result.steer_first_rate = static_cast<double>(steer_first) / n;
    result.steer_last_rate = static_cast<double>(steer_last) / n;
    result.overall = 0.25 * (result.accel_first_rate + result.accel_last_rate +
                             result.steer_first_rate + result.steer_last_rate);
  }
  return result;
}

}  // namespace mms
