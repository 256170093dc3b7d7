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

#include "mms/actions.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace mms
{

namespace
{

constexpr double kPi = 3.14159265358979323846;
constexpr double kTinySegment = 1e-9;  // m, below this a segment is stationary

// Control magnitudes per speed regime, indexed by class.
constexpr double kAccelLow[5] = {-2.5, -0.6, 0.0, 0.6, 2.5};
constexpr double kAccelHigh[5] = {-5.0, -1.2, 0.0, 1.2, 5.0};
constexpr double kSteerLowDeg[5] = {30.0, 10.0, 0.0, -10.0, -30.0};
constexpr double kSteerHighDeg[5] = {0.3, 0.1, 0.0, -0.1, -0.3};

// Class boundaries sit at the midpoints between neighboring magnitudes.
constexpr double kAccelSlightCutLow = 0.3;    // (0 + 0.6) / 2
constexpr double kAccelStrongCutLow = 1.55;   // (0.6 + 2.5) / 2
constexpr double kAccelSlightCutHigh = 0.6;   // (0 + 1.2) / 2
constexpr double kAccelStrongCutHigh = 3.1;   // (1.2 + 5.0) / 2
constexpr double kSteerSlightCutLowDeg = 5.0;    // (0 + 10) / 2
constexpr double kSteerFullCutLowDeg = 20.0;     // (10 + 30) / 2
constexpr double kSteerSlightCutHighDeg = 0.05;  // (0 + 0.1) / 2
constexpr double kSteerFullCutHighDeg = 0.2;     // (0.1 + 0.3) / 2

double sinc_half(double angle)
{
  const double x = 0.5 * angle;
  if (std::abs(x) < 1e-8) {
    return 1.0 - x * x / 6.0;
  }
  return std::sin(x) / x;
}

struct BicycleState
{
  double x{0.0};
  double y{0.0};
  double heading{0.0};
  double speed{0.0};
};

// One substep under constant (acceleration, steering). The path is a
// circular arc in arc length, so advancing along the chord at the half-angle
// reproduces the continuous model exactly for piecewise-constant controls.
void advance(BicycleState & s, double accel, double steer_rad, double wheelbase, double h)
{
  double next_speed = s.speed + accel * h;
  double ds = 0.0;
  if (next_speed < 0.0) {
    // The vehicle stops within the substep and stays stopped.
    ds = s.speed * s.speed / (2.0 * -accel);
    next_speed = 0.0;
  } else {
    ds = 0.5 * (s.speed + next_speed) * h;
  }
  const double dtheta = std::tan(steer_rad) / wheelbase * ds;
  const double chord = ds * sinc_half(dtheta);
  const double mid_heading = s.heading + 0.5 * dtheta;
  s.x += chord * std::cos(mid_heading);
  s.y += chord * std::sin(mid_heading);
  s.heading += dtheta;
  s.speed = next_speed;
}

AccelClass quantize_accel(double mean_accel, bool low_regime)
{
  const double slight_cut = low_regime ? kAccelSlightCutLow : kAccelSlightCutHigh;
  const double strong_cut = low_regime ? kAccelStrongCutLow : kAccelStrongCutHigh;
  const double magnitude = std::abs(mean_accel);
  if (magnitude <= slight_cut) {
    return AccelClass::kMaintain;
  }
  if (magnitude <= strong_cut) {
    return mean_accel > 0.0 ? AccelClass::kAccelSlight : AccelClass::kDecelSlight;
  }
  return mean_accel > 0.0 ? AccelClass::kAccelStrong : AccelClass::kDecelStrong;
}

SteerClass quantize_steer(double steer_deg, bool low_regime)
{
  const double slight_cut = low_regime ? kSteerSlightCutLowDeg : kSteerSlightCutHighDeg;
  const double full_cut = low_regime ? kSteerFullCutLowDeg : kSteerFullCutHighDeg;
  const double magnitude = std::abs(steer_deg);
  if (magnitude <= slight_cut) {
    return SteerClass::kStraight;
  }
  if (magnitude <= full_cut) {
    return steer_deg > 0.0 ? SteerClass::kSlightLeft : SteerClass::kSlightRight;
  }
  return steer_deg > 0.0 ? SteerClass::kLeft : SteerClass::kRight;
}

}  // namespace

const char * accel_class_name(AccelClass c)
{
  switch (c) {
    case AccelClass::kDecelStrong: return "decelerate_strongly";
    case AccelClass::kDecelSlight: return "decelerate_slightly";
    case AccelClass::kMaintain: return "maintain_speed";
    case AccelClass::kAccelSlight: return "accelerate_slightly";
    case AccelClass::kAccelStrong: return "accelerate_strongly";
  }
  return "unknown";
}

const char * steer_class_name(SteerClass c)
{
  switch (c) {
    case SteerClass::kLeft: return "turn_left";
    case SteerClass::kSlightLeft: return "turn_slightly_left";
    case SteerClass::kStraight: return "steer_straight";
    case SteerClass::kSlightRight: return "turn_slightly_right";
    case SteerClass::kRight: return "turn_right";
  }
  return "unknown";
}

std::optional<AccelClass> accel_class_from_name(const std::string & name)
{
  for (int i = 0; i < 5; ++i) {
    const auto c = static_cast<AccelClass>(i);
    if (name == accel_class_name(c)) {
      return c;
    }
  }
  return std::nullopt;
}

std::optional<SteerClass> steer_class_from_name(const std::string & name)
{
  for (int i = 0; i < 5; ++i) {
    const auto c = static_cast<SteerClass>(i);
    if (name == steer_class_name(c)) {
      return c;
    }
  }
  return std::nullopt;
}

ControlParams control_params(AccelClass accel, SteerClass steer, double speed)
{
  const bool low = speed <= kRegimeBoundarySpeed;
  ControlParams params;
  params.acceleration = (low ? kAccelLow : kAccelHigh)[static_cast<int>(accel)];
  params.steering_angle_deg = (low ? kSteerLowDeg : kSteerHighDeg)[static_cast<int>(steer)];
  return params;
}

Trajectory rollout(const Trajectory & past, const IntervalActions & actions, double wheelbase)
{
  validate_trajectory(past, TrajectoryKind::kPast);

  const std::size_t n = past.size();
  const double seg_x = past[n - 1].x - past[n - 2].x;
  const double seg_y = past[n - 1].y - past[n - 2].y;
  const double seg_len = std::sqrt(seg_x * seg_x + seg_y * seg_y);

  BicycleState state;
  state.speed = seg_len / past.dt();
  state.heading = seg_len > kTinySegment ? std::atan2(seg_y, seg_x) : 0.0;

  constexpr std::size_t substeps_per_sample = 5;  // 0.2 s sample, 0.04 s substep
  std::vector<Waypoint> waypoints;
  waypoints.reserve(kFutureLength);

  const std::size_t first_samples = 15;  // (0 s, 3 s]
  const std::size_t last_samples = 10;   // (3 s, 5 s]
  for (int interval = 0; interval < 2; ++interval) {
    const ActionPair & pair = interval == 0 ? actions.first_3s : actions.last_2s;
    const ControlParams controls = control_params(pair.accel, pair.steer, state.speed);
    const double steer_rad = controls.steering_angle_deg * kPi / 180.0;
    const std::size_t samples = interval == 0 ? first_samples : last_samples;
    for (std::size_t i = 0; i < samples; ++i) {
      for (std::size_t k = 0; k < substeps_per_sample; ++k) {
        advance(state, controls.acceleration, steer_rad, wheelbase, kRolloutSubstep);
      }
      waypoints.push_back(Waypoint{state.x, state.y});
    }
  }
  return Trajectory::future(std::move(waypoints));
}

ActionPair classify(const Trajectory & future, ActionInterval interval, double wheelbase)
{
  validate_trajectory(future, TrajectoryKind::kFuture);

  // Work on the origin-anchored polyline so the first segment is covered.
  std::vector<Waypoint> points;
  points.reserve(future.size() + 1);
  points.push_back(Waypoint{0.0, 0.0});
  points.insert(points.end(), future.waypoints().begin(), future.waypoints().end());

  // Segment index ranges: [0, 15) covers (0 s, 3 s], [15, 25) covers (3 s, 5 s].
  const std::size_t seg_begin = interval == ActionInterval::kFirst3s ? 0 : 15;
  const std::size_t seg_end = interval == ActionInterval::kFirst3s ? 15 : 25;
  const double dt = future.dt();

  std::vector<double> lengths;
  lengths.reserve(seg_end - seg_begin);
  double total_arc = 0.0;
  for (std::size_t k = seg_begin; k < seg_end; ++k) {
    const double dx = points[k + 1].x - points[k].x;
    const double dy = points[k + 1].y - points[k].y;
    const double len = std::sqrt(dx * dx + dy * dy);
    lengths.push_back(len);
    total_arc += len;
  }

  const double first_speed = lengths.front() / dt;
  const double last_speed = lengths.back() / dt;
  const double mean_accel =
    (last_speed - first_speed) / (static_cast<double>(lengths.size() - 1) * dt);

  // Mean signed curvature over the interval: accumulated turn divided by the
  // arc between the first and last segment midpoints.
  double total_turn = 0.0;
  for (std::size_t k = seg_begin; k + 1 < seg_end; ++k) {
    const double ax = points[k + 1].x - points[k].x;
    const double ay = points[k + 1].y - points[k].y;
    const double bx = points[k + 2].x - points[k + 1].x;
    const double by = points[k + 2].y - points[k + 1].y;
    if (
      std::sqrt(ax * ax + ay * ay) < kTinySegment ||
      std::sqrt(bx * bx + by * by) < kTinySegment) {
      continue;
    }
    total_turn += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  const double turn_arc = total_arc - 0.5 * (lengths.front() + lengths.back());
  const double curvature = turn_arc > 1e-6 ? total_turn / turn_arc : 0.0;
  const double steer_deg = std::atan(wheelbase * curvature) * 180.0 / kPi;

  const bool low_regime = first_speed <= kRegimeBoundarySpeed;
  return ActionPair{quantize_accel(mean_accel, low_regime), quantize_steer(steer_deg, low_regime)};
}

IntervalActions classify_intervals(const Trajectory & future, double wheelbase)
{
  return IntervalActions{
    classify(future, ActionInterval::kFirst3s, wheelbase),
    classify(future, ActionInterval::kLast2s, wheelbase)};
}

}  // namespace mms
