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

#ifndef MMS__TRAJECTORY_HPP_
#define MMS__TRAJECTORY_HPP_

#include "mms/error.hpp"

#include <cstddef>
#include <vector>

namespace mms
{

// Ego-centric frame: x forward, y to the left, origin at the current pose.
struct Waypoint
{
  double x{0.0};
  double y{0.0};
};

inline constexpr double kSampleDt = 0.2;        // 5 Hz
inline constexpr std::size_t kPastLength = 21;  // 4 s of history plus the origin
inline constexpr std::size_t kFutureLength = 25;
inline constexpr double kPastT0Offset = -4.0;
inline constexpr double kFutureT0Offset = 0.2;
inline constexpr double kCheckpointMid = 3.0;
inline constexpr double kCheckpointEnd = 5.0;
inline constexpr double kOriginAnchorTolerance = 1e-9;

enum class TrajectoryKind { kPast, kFuture };

// Uniformly sampled polyline. The constructor enforces what every consumer
// relies on (at least two finite waypoints, positive sampling interval);
// kind-specific requirements live in validate_trajectory().
class Trajectory
{
public:
  Trajectory(std::vector<Waypoint> waypoints, double dt, double t0_offset);

  static Trajectory past(std::vector<Waypoint> waypoints);
  static Trajectory future(std::vector<Waypoint> waypoints);

  std::size_t size() const noexcept { return waypoints_.size(); }
  double dt() const noexcept { return dt_; }
  double t0_offset() const noexcept { return t0_offset_; }
  const std::vector<Waypoint> & waypoints() const noexcept { return waypoints_; }
  const Waypoint & operator[](std::size_t i) const { return waypoints_[i]; }
  const Waypoint & front() const { return waypoints_.front(); }
  const Waypoint & back() const { return waypoints_.back(); }

  // Timestamp of waypoint i relative to the current pose.
  double time_at(std::size_t i) const { return t0_offset_ + static_cast<double>(i) * dt_; }

  // Index of the waypoint sampled at the given time; throws
  // kCheckpointOutOfRange when the time is not covered (within tolerance).
  std::size_t index_at_time(double time) const;

private:
  std::vector<Waypoint> waypoints_;
  double dt_;
  double t0_offset_;
};

// Checks the sampling contract for the requested kind and returns the input.
// Past trajectories have 21 waypoints starting at -4.0 s and end at the
// origin; future trajectories have 25 waypoints starting at +0.2 s.
const Trajectory & validate_trajectory(const Trajectory & trajectory, TrajectoryKind kind);

struct VelocityEstimate
{
  double vx{0.0};
  double vy{0.0};
  double speed{0.0};
};

// Finite-difference velocity at a waypoint: central differences in the
// interior, one-sided at the ends.
VelocityEstimate velocity_at(const Trajectory & trajectory, std::size_t index);

// Mean magnitude of the discrete third derivative, in m/s^3. Requires at
// least four waypoints.
double average_jerk(const Trajectory & trajectory);

// Arc length divided by endpoint chord. Throws kDegenerateChord when the
// endpoints (nearly) coincide.
double tortuosity(const Trajectory & trajectory);

struct LatLonDisplacement
{
  double lateral{0.0};       // |offset| across the reference heading
  double longitudinal{0.0};  // |offset| along the reference heading
  double checkpoint_time{0.0};
  bool heading_fallback{false};  // reference was stationary; ego x-axis used
};

// Decomposes plan - reference at the checkpoint into the reference-heading
// frame. Both trajectories must share dt and t0 and cover the checkpoint.
LatLonDisplacement latlon_displacement(
  const Trajectory & plan, const Trajectory & reference, double checkpoint_time);

struct L2Error
{
  double mean{0.0};
  double final_waypoint{0.0};
};

// Pointwise Euclidean error between two equally shaped trajectories.
L2Error l2_error(const Trajectory & plan, const Trajectory & expert);

}  // namespace mms

#endif  // MMS__TRAJECTORY_HPP_
