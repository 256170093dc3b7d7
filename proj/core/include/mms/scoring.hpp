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

#ifndef MMS__SCORING_HPP_
#define MMS__SCORING_HPP_

#include "mms/trajectory.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mms
{

// Labeled reference maneuvers a plan is matched against, ordered by how
// acceptable the behavior is.
enum class ReferenceCategory {
  kExpertLike,
  kWrongSpeed,
  kNeglectInstruction,
  kOffRoadNoCrash,
  kCrash,
};

inline constexpr int kReferenceCategoryCount = 5;

// Ledger value of a perfect match with the category.
int base_score(ReferenceCategory category);

// Whether comfort deductions apply to matches with the category. Crashing or
// leaving the road is already penalized by the base score; discomfort on top
// of that is not scored.
bool comfort_applicable(ReferenceCategory category);

const char * reference_category_name(ReferenceCategory category);
std::optional<ReferenceCategory> reference_category_from_name(const std::string & name);

struct LabeledReference
{
  ReferenceCategory category;
  Trajectory trajectory;
  std::string source;  // provenance tag, e.g. "recorded" or "augment:retime:0.8"
};

// Non-empty set of references for one scenario with at most one expert entry.
class ReferenceSet
{
public:
  explicit ReferenceSet(std::vector<LabeledReference> references);

  const std::vector<LabeledReference> & entries() const noexcept { return references_; }
  std::size_t size() const noexcept { return references_.size(); }
  const LabeledReference & operator[](std::size_t i) const { return references_[i]; }

  // Index of the expert entry, if present.
  std::optional<std::size_t> expert_index() const noexcept { return expert_index_; }

private:
  std::vector<LabeledReference> references_;
  std::optional<std::size_t> expert_index_;
};

struct SimilarityThresholds
{
  double lambda_lat{0.0};
  double lambda_lon{0.0};
  double checkpoint_time{0.0};
};

// Speed-adaptive displacement thresholds at a checkpoint. The base lateral
// budget is 1.0 m at 3 s and 1.8 m at 5 s, longitudinal twice that, both
// scaled by 0.5 at walking speed up to 1.0 at 11 m/s.
SimilarityThresholds thresholds(double initial_speed, double checkpoint_time);

enum class CheckpointPolicy {
  kCheckpoints,   // 3 s and 5 s checkpoints
  kPerWaypoint,   // every waypoint, thresholds interpolated over time
};

// Similarity in [0, 1] between a plan and one reference; 1 when the plan
// stays inside the displacement budget at every checkpoint, decaying linearly
// to 0 at twice the budget.
double similarity(
  const Trajectory & plan, const Trajectory & reference, double initial_speed,
  CheckpointPolicy policy = CheckpointPolicy::kCheckpoints);

struct ComfortPenalty
{
  int value{0};
  bool jerk_flag{false};
  bool tortuosity_flag{false};
};

// One penalty point when the plan's average jerk exceeds the reference's by
// more than 44%, another when its tortuosity is at least 6% above.
ComfortPenalty comfort_penalty(const Trajectory & plan, const Trajectory & reference);

enum class ScoreCase {
  kPastInconsistent,     // plan ignores the current motion state
  kCrashOrOffRoadMatch,  // best match is a crash or off-road reference
  kScaledReference,      // similarity-scaled base score minus comfort
  kUnmatched,            // no reference matches well enough
};

struct MmsResult
{
  double score{0.0};
  ScoreCase case_applied{ScoreCase::kUnmatched};
  std::optional<ReferenceCategory> matched_category;
  std::optional<std::size_t> matched_index;
  double similarity_s{0.0};
  ComfortPenalty comfort;
};

// Multi-maneuver score of a plan in [0, 10], given the scenario past and the
// labeled references.
MmsResult score(
  const Trajectory & plan, const Trajectory & past, const ReferenceSet & references,
  CheckpointPolicy policy = CheckpointPolicy::kCheckpoints);

struct LinearFit
{
  double r{0.0};
  double slope{0.0};
  double intercept{0.0};
};

// Pearson correlation and least-squares line through (x, y) pairs. Requires
// at least two pairs and non-degenerate variance on both axes.
LinearFit pearson_and_fit(const std::vector<std::pair<double, double>> & pairs);

}  // namespace mms

#endif  // MMS__SCORING_HPP_
