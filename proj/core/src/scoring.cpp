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

#include "mms/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mms
{

namespace
{

constexpr double kMatchFloor = 0.4;       // minimum s for a crash / off-road verdict
constexpr double kUnmatchedBase = 3.5;    // fallback score before comfort deduction
constexpr double kJerkBudget = 1.44;      // plan jerk may exceed reference jerk by 44%
constexpr double kTortuosityBudget = 1.06;
constexpr double kZeroJerkFloor = 0.05;   // m/s^3, used when the reference jerk vanishes
constexpr double kRatioUlpGuard = 1e-12;  // tolerates last-ulp rounding in the ratios

constexpr double kSpeedFactorLow = 1.4;   // m/s, walking pace
constexpr double kSpeedFactorHigh = 11.0; // m/s
constexpr double kBaseLatMid = 1.0;       // m at the 3 s checkpoint
constexpr double kBaseLatEnd = 1.8;       // m at the 5 s checkpoint

double speed_factor(double initial_speed)
{
  if (initial_speed <= kSpeedFactorLow) {
    return 0.5;
  }
  if (initial_speed >= kSpeedFactorHigh) {
    return 1.0;
  }
  return 0.5 + 0.5 * (initial_speed - kSpeedFactorLow) / (kSpeedFactorHigh - kSpeedFactorLow);
}

// Lateral budget as a function of checkpoint time, clamped to the anchor
// values outside [3 s, 5 s]. Only the per-waypoint policy asks for times off
// the two anchors.
double base_lateral(double checkpoint_time)
{
  if (checkpoint_time <= kCheckpointMid) {
    return kBaseLatMid;
  }
  if (checkpoint_time >= kCheckpointEnd) {
    return kBaseLatEnd;
  }
  const double w = (checkpoint_time - kCheckpointMid) / (kCheckpointEnd - kCheckpointMid);
  return kBaseLatMid + w * (kBaseLatEnd - kBaseLatMid);
}

SimilarityThresholds thresholds_at(double initial_speed, double checkpoint_time)
{
  const double lat = base_lateral(checkpoint_time) * speed_factor(initial_speed);
  return SimilarityThresholds{lat, 2.0 * lat, checkpoint_time};
}

double checkpoint_similarity(
  const Trajectory & plan, const Trajectory & reference, const SimilarityThresholds & budget)
{
  const LatLonDisplacement d =
    latlon_displacement(plan, reference, budget.checkpoint_time);
  if (d.lateral <= budget.lambda_lat && d.longitudinal <= budget.lambda_lon) {
    return 1.0;
  }
  const double sim_lat = std::max(0.0, 1.0 - (d.lateral - budget.lambda_lat) / budget.lambda_lat);
  const double sim_lon =
    std::max(0.0, 1.0 - (d.longitudinal - budget.lambda_lon) / budget.lambda_lon);
  return std::min(sim_lat, sim_lon);
}

}  // namespace

int base_score(ReferenceCategory category)
{
  switch (category) {
    case ReferenceCategory::kExpertLike: return 10;
    case ReferenceCategory::kWrongSpeed: return 7;
    case ReferenceCategory::kNeglectInstruction: return 4;
    case ReferenceCategory::kOffRoadNoCrash: return 1;
    case ReferenceCategory::kCrash: return 0;
  }
  return 0;
}

bool comfort_applicable(ReferenceCategory category)
{
  switch (category) {
    case ReferenceCategory::kExpertLike:
    case ReferenceCategory::kWrongSpeed:
    case ReferenceCategory::kNeglectInstruction:
      return true;
    case ReferenceCategory::kOffRoadNoCrash:
    case ReferenceCategory::kCrash:
      return false;
  }
  return false;
}

const char * reference_category_name(ReferenceCategory category)
{
  switch (category) {
    case ReferenceCategory::kExpertLike: return "expert_like";
    case ReferenceCategory::kWrongSpeed: return "wrong_speed";
    case ReferenceCategory::kNeglectInstruction: return "neglect_instruction";
    case ReferenceCategory::kOffRoadNoCrash: return "off_road_no_crash";
    case ReferenceCategory::kCrash: return "crash";
  }
  return "unknown";
}

std::optional<ReferenceCategory> reference_category_from_name(const std::string & name)
{
  for (int i = 0; i < kReferenceCategoryCount; ++i) {
    const auto category = static_cast<ReferenceCategory>(i);
    if (name == reference_category_name(category)) {
      return category;
    }
  }
  return std::nullopt;
}

ReferenceSet::ReferenceSet(std::vector<LabeledReference> references)
: references_(std::move(references))
{
  if (references_.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet, "a scenario needs at least one reference");
  }
  for (std::size_t i = 0; i < references_.size(); ++i) {
    validate_trajectory(references_[i].trajectory, TrajectoryKind::kFuture);
    if (references_[i].category == ReferenceCategory::kExpertLike) {
      if (expert_index_.has_value()) {
        throw Error(ErrorCode::kDuplicateExpert, "more than one expert reference");
      }
      expert_index_ = i;
    }
  }
}

SimilarityThresholds thresholds(double initial_speed, double checkpoint_time)
{
  if (checkpoint_time != kCheckpointMid && checkpoint_time != kCheckpointEnd) {
    throw Error(
      ErrorCode::kUnsupportedCheckpoint,
      "checkpoint must be 3.0 or 5.0 s, got " + std::to_string(checkpoint_time));
  }
  return thresholds_at(initial_speed, checkpoint_time);
}

double similarity(
  const Trajectory & plan, const Trajectory & reference, double initial_speed,
  CheckpointPolicy policy)
{
  double sim = 1.0;
  if (policy == CheckpointPolicy::kCheckpoints) {
    for (const double t : {kCheckpointMid, kCheckpointEnd}) {
      sim = std::min(sim, checkpoint_similarity(plan, reference, thresholds_at(initial_speed, t)));
    }
  } else {
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const double t = plan.time_at(i);
      sim = std::min(sim, checkpoint_similarity(plan, reference, thresholds_at(initial_speed, t)));
    }
  }
  return sim;
}

ComfortPenalty comfort_penalty(const Trajectory & plan, const Trajectory & reference)
{
  ComfortPenalty penalty;

  const double plan_jerk = average_jerk(plan);
  const double reference_jerk = average_jerk(reference);
  // Anything below 1e-9 m/s^3 is rounding noise from the coordinate grid,
  // not motion; such references take the absolute floor.
  if (reference_jerk <= 1e-9) {
    penalty.jerk_flag = plan_jerk > kZeroJerkFloor;
  } else {
    penalty.jerk_flag = plan_jerk > kJerkBudget * reference_jerk * (1.0 + kRatioUlpGuard);
  }

  const double reference_tortuosity = tortuosity(reference);
  bool plan_degenerate = false;
  double plan_tortuosity = 0.0;
  try {
    plan_tortuosity = tortuosity(plan);
  } catch (const Error & e) {
    if (e.code() != ErrorCode::kDegenerateChord) {
      throw;
    }
    // A plan that comes back to its start point is maximally tortuous.
    plan_degenerate = true;
  }
  penalty.tortuosity_flag =
    plan_degenerate ||
    plan_tortuosity >= kTortuosityBudget * reference_tortuosity * (1.0 - kRatioUlpGuard);

  penalty.value = (penalty.jerk_flag ? 1 : 0) + (penalty.tortuosity_flag ? 1 : 0);
  return penalty;
}

MmsResult score(
  const Trajectory & plan, const Trajectory & past, const ReferenceSet & references,
  CheckpointPolicy policy)
{
  validate_trajectory(plan, TrajectoryKind::kFuture);
  validate_trajectory(past, TrajectoryKind::kPast);

  // Current motion state from the last past segment.
  const std::size_t n = past.size();
  const double vref_x = (past[n - 1].x - past[n - 2].x) / past.dt();
  const double vref_y = (past[n - 1].y - past[n - 2].y) / past.dt();
  const double ref_speed = std::sqrt(vref_x * vref_x + vref_y * vref_y);
  double ux = 1.0;
  double uy = 0.0;
  if (ref_speed > 1e-9) {
    ux = vref_x / ref_speed;
    uy = vref_y / ref_speed;
  }

  // Planned initial velocity; the plan starts one sample after the origin.
  const double vplan_x = plan[0].x / plan.dt();
  const double vplan_y = plan[0].y / plan.dt();

  MmsResult result;

  // Case 1: the plan contradicts the current motion state.
  if (vplan_x * ux + vplan_y * uy <= 0.5 * ref_speed) {
    result.score = 0.0;
    result.case_applied = ScoreCase::kPastInconsistent;
    return result;
  }

  // Best match, ties broken toward the higher base score.
  double best_s = -1.0;
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < references.size(); ++k) {
    const double s = similarity(plan, references[k].trajectory, ref_speed, policy);
    const bool better =
      s > best_s ||
      (s == best_s && base_score(references[k].category) >
                        base_score(references[best_index].category));
    if (better) {
      best_s = s;
      best_index = k;
    }
  }
  const ReferenceCategory best_category = references[best_index].category;
  const int best_base = base_score(best_category);
  result.similarity_s = best_s;

  // Case 2: convincing match with a crash or off-road reference keeps the
  // raw base score, comfort not considered.
  if ((best_base == 0 || best_base == 1) && best_s >= kMatchFloor) {
    result.score = static_cast<double>(best_base);
    result.case_applied = ScoreCase::kCrashOrOffRoadMatch;
    result.matched_category = best_category;
    result.matched_index = best_index;
    return result;
  }

  // Comfort is judged against the matched reference when deductions apply to
  // its category, otherwise against the expert.
  ComfortPenalty comfort;
  if (comfort_applicable(best_category)) {
    comfort = comfort_penalty(plan, references[best_index].trajectory);
  } else if (references.expert_index().has_value()) {
    comfort = comfort_penalty(plan, references[*references.expert_index()].trajectory);
  }
  result.comfort = comfort;

  const double floor_score = kUnmatchedBase - static_cast<double>(comfort.value);
  const double scaled =
    best_s * static_cast<double>(best_base) -
    (comfort_applicable(best_category) ? static_cast<double>(comfort.value) : 0.0);

  if (scaled >= floor_score) {
    // Case 3: similarity-scaled ledger score with comfort deduction.
    result.score = std::clamp(std::max(scaled, floor_score), 0.0, 10.0);
    result.case_applied = ScoreCase::kScaledReference;
    result.matched_category = best_category;
    result.matched_index = best_index;
    return result;
  }

  // Case 4: nothing matches well enough; a plan consistent with the current
  // state is still better than going off-road, minus discomfort.
  result.score = std::clamp(floor_score, 0.0, 10.0);
  result.case_applied = ScoreCase::kUnmatched;
  return result;
}

LinearFit pearson_and_fit(const std::vector<std::pair<double, double>> & pairs)
{
  const std::size_t n = pairs.size();
  if (n < 2) {
    throw Error(ErrorCode::kTooShort, "correlation needs at least two pairs");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto & [x, y] : pairs) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto & [x, y] : pairs) {
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw Error(ErrorCode::kDegenerateVariance, "constant coordinate, correlation undefined");
  }

  LinearFit fit;
  fit.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

}  // namespace mms
