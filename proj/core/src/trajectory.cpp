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

#include "mms/trajectory.hpp"

#include <cmath>
#include <string>

namespace mms
{

namespace
{

constexpr double kSamplingTolerance = 1e-9;
constexpr double kStationaryHeadingSpeed = 1e-9;  // m/s

double hypot2(double x, double y)
{
  return std::sqrt(x * x + y * y);
}

}  // namespace

Trajectory::Trajectory(std::vector<Waypoint> waypoints, double dt, double t0_offset)
: waypoints_(std::move(waypoints)), dt_(dt), t0_offset_(t0_offset)
{
  if (waypoints_.size() < 2) {
    throw Error(
      ErrorCode::kTooShort,
      "trajectory needs at least 2 waypoints, got " + std::to_string(waypoints_.size()));
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw Error(ErrorCode::kWrongSampling, "dt must be positive, got " + std::to_string(dt_));
  }
  if (!std::isfinite(t0_offset_)) {
    throw Error(ErrorCode::kWrongSampling, "t0 offset must be finite");
  }
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (!std::isfinite(waypoints_[i].x) || !std::isfinite(waypoints_[i].y)) {
      throw Error(
        ErrorCode::kNonFiniteCoordinate, "waypoint " + std::to_string(i) + " is not finite");
    }
  }
}

Trajectory Trajectory::past(std::vector<Waypoint> waypoints)
{
  Trajectory trajectory(std::move(waypoints), kSampleDt, kPastT0Offset);
  validate_trajectory(trajectory, TrajectoryKind::kPast);
  return trajectory;
}

Trajectory Trajectory::future(std::vector<Waypoint> waypoints)
{
  Trajectory trajectory(std::move(waypoints), kSampleDt, kFutureT0Offset);
  validate_trajectory(trajectory, TrajectoryKind::kFuture);
  return trajectory;
}

std::size_t Trajectory::index_at_time(double time) const
{
  const double raw = (time - t0_offset_) / dt_;
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-6 || rounded < 0.0 ||
      rounded >= static_cast<double>(waypoints_.size())) {
    throw Error(
      ErrorCode::kCheckpointOutOfRange,
      "time " + std::to_string(time) + " is not a sample of this trajectory");
  }
  return static_cast<std::size_t>(rounded);
}

const Trajectory & validate_trajectory(const Trajectory & trajectory, TrajectoryKind kind)
{
  const std::size_t expected_length = kind == TrajectoryKind::kPast ? kPastLength : kFutureLength;
  const double expected_t0 = kind == TrajectoryKind::kPast ? kPastT0Offset : kFutureT0Offset;

  if (trajectory.size() != expected_length) {
    throw Error(
      ErrorCode::kWrongLength, "expected " + std::to_string(expected_length) + " waypoints, got " +
                                 std::to_string(trajectory.size()));
  }
  if (std::abs(trajectory.dt() - kSampleDt) > kSamplingTolerance) {
    throw Error(ErrorCode::kWrongSampling, "expected 5 Hz sampling (dt = 0.2 s)");
  }
  if (std::abs(trajectory.t0_offset() - expected_t0) > kSamplingTolerance) {
    throw Error(
      ErrorCode::kWrongSampling,
      "expected t0 offset " + std::to_string(expected_t0) + ", got " +
        std::to_string(trajectory.t0_offset()));
  }
  if (kind == TrajectoryKind::kPast) {
    const Waypoint & last = trajectory.back();
    if (std::abs(last.x) > kOriginAnchorTolerance || std::abs(last.y) > kOriginAnchorTolerance) {
      throw Error(
        ErrorCode::kPastNotAnchoredAtOrigin, "past trajectory must end at the current pose (0, 0)");
    }
  }
  return trajectory;
}

VelocityEstimate velocity_at(const Trajectory & trajectory, std::size_t index)
{
  const std::size_t n = trajectory.size();
  if (index >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, "waypoint index " + std::to_string(index));
  }

  double vx = 0.0;
  double vy = 0.0;
  if (index == 0) {
    vx = (trajectory[1].x - trajectory[0].x) / trajectory.dt();
    vy = (trajectory[1].y - trajectory[0].y) / trajectory.dt();
  } else if (index == n - 1) {
    vx = (trajectory[n - 1].x - trajectory[n - 2].x) / trajectory.dt();
    vy = (trajectory[n - 1].y - trajectory[n - 2].y) / trajectory.dt();
  } else {
    vx = (trajectory[index + 1].x - trajectory[index - 1].x) / (2.0 * trajectory.dt());
    vy = (trajectory[index + 1].y - trajectory[index - 1].y) / (2.0 * trajectory.dt());
  }
  return VelocityEstimate{vx, vy, hypot2(vx, vy)};
}

double average_jerk(const Trajectory & trajectory)
{
  const std::size_t n = trajectory.size();
  if (n < 4) {
    throw Error(ErrorCode::kTooShort, "jerk needs at least 4 waypoints");
  }
  const double dt3 = trajectory.dt() * trajectory.dt() * trajectory.dt();
  double sum = 0.0;
  for (std::size_t t = 0; t + 3 < n; ++t) {
    const double d3x =
      trajectory[t + 3].x - 3.0 * trajectory[t + 2].x + 3.0 * trajectory[t + 1].x -
      trajectory[t].x;
    const double d3y =
      trajectory[t + 3].y - 3.0 * trajectory[t + 2].y + 3.0 * trajectory[t + 1].y -
      trajectory[t].y;
    sum += hypot2(d3x / dt3, d3y / dt3);
  }
  // Normalized by the waypoint count, not the number of third differences.
  return sum / static_cast<double>(n);
}

double tortuosity(const Trajectory & trajectory)
{
  const std::size_t n = trajectory.size();
  double arc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    arc += hypot2(trajectory[i + 1].x - trajectory[i].x, trajectory[i + 1].y - trajectory[i].y);
  }
  const double chord = hypot2(trajectory[n - 1].x - trajectory[0].x,
                              trajectory[n - 1].y - trajectory[0].y);
  if (chord < 1e-9) {
    throw Error(ErrorCode::kDegenerateChord, "endpoints coincide, tortuosity undefined");
  }
  return arc / chord;
}

LatLonDisplacement latlon_displacement(
  const Trajectory & plan, const Trajectory & reference, double checkpoint_time)
{
  if (
    std::abs(plan.dt() - reference.dt()) > kSamplingTolerance ||
    std::abs(plan.t0_offset() - reference.t0_offset()) > kSamplingTolerance) {
    throw Error(ErrorCode::kShapeMismatch, "plan and reference must share dt and t0 offset");
  }
  const std::size_t plan_index = plan.index_at_time(checkpoint_time);
  const std::size_t ref_index = reference.index_at_time(checkpoint_time);

  const Waypoint & p = plan[plan_index];
  const Waypoint & r = reference[ref_index];
  const double dx = p.x - r.x;
  const double dy = p.y - r.y;

  LatLonDisplacement result;
  result.checkpoint_time = checkpoint_time;

  const VelocityEstimate ref_velocity = velocity_at(reference, ref_index);
  double ux = 1.0;
  double uy = 0.0;
  if (ref_velocity.speed > kStationaryHeadingSpeed) {
    ux = ref_velocity.vx / ref_velocity.speed;
    uy = ref_velocity.vy / ref_velocity.speed;
  } else {
    result.heading_fallback = true;
  }

  result.longitudinal = std::abs(dx * ux + dy * uy);
  result.lateral = std::abs(-dx * uy + dy * ux);
  return result;
}

L2Error l2_error(const Trajectory & plan, const Trajectory & expert)
{
  if (
    plan.size() != expert.size() || std::abs(plan.dt() - expert.dt()) > kSamplingTolerance ||
    std::abs(plan.t0_offset() - expert.t0_offset()) > kSamplingTolerance) {
    throw Error(ErrorCode::kShapeMismatch, "plan and expert must be equally shaped");
  }
  double sum = 0.0;
  double last = 0.0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    last = hypot2(plan[i].x - expert[i].x, plan[i].y - expert[i].y);
    sum += last;
  }
  return L2Error{sum / static_cast<double>(plan.size()), last};
}

}  // namespace mms
