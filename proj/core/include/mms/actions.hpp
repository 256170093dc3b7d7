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

#ifndef MMS__ACTIONS_HPP_
#define MMS__ACTIONS_HPP_

#include "mms/trajectory.hpp"

#include <optional>
#include <string>

namespace mms
{

enum class AccelClass { kDecelStrong, kDecelSlight, kMaintain, kAccelSlight, kAccelStrong };
enum class SteerClass { kLeft, kSlightLeft, kStraight, kSlightRight, kRight };

const char * accel_class_name(AccelClass c);
const char * steer_class_name(SteerClass c);
std::optional<AccelClass> accel_class_from_name(const std::string & name);
std::optional<SteerClass> steer_class_from_name(const std::string & name);

struct ActionPair
{
  AccelClass accel{AccelClass::kMaintain};
  SteerClass steer{SteerClass::kStraight};

  bool operator==(const ActionPair &) const = default;
};

// One action pair for (0 s, 3 s] and one for (3 s, 5 s].
struct IntervalActions
{
  ActionPair first_3s;
  ActionPair last_2s;

  bool operator==(const IntervalActions &) const = default;
};

struct ControlParams
{
  double acceleration{0.0};        // m/s^2
  double steering_angle_deg{0.0};  // positive steers left
};

// Speed regime boundary: city driving up to 60 km/h, highway above.
inline constexpr double kRegimeBoundarySpeed = 60.0 / 3.6;
inline constexpr double kDefaultWheelbase = 2.8;  // m
inline constexpr double kRolloutSubstep = 0.04;   // s

// Fixed control magnitudes for an action pair, chosen by the speed regime at
// the start of the interval.
ControlParams control_params(AccelClass accel, SteerClass steer, double speed);

// Integrates a kinematic bicycle from the end of the past trajectory under
// the interval actions and returns the traversed 5 s future at 5 Hz.
Trajectory rollout(
  const Trajectory & past, const IntervalActions & actions,
  double wheelbase = kDefaultWheelbase);

enum class ActionInterval { kFirst3s, kLast2s };

// Nearest action pair for one interval of a future trajectory, inverting the
// rollout quantization: mean longitudinal acceleration against the class
// midpoints and mean-curvature-equivalent steering angle likewise.
ActionPair classify(
  const Trajectory & future, ActionInterval interval, double wheelbase = kDefaultWheelbase);

// Convenience wrapper classifying both intervals.
IntervalActions classify_intervals(
  const Trajectory & future, double wheelbase = kDefaultWheelbase);

}  // namespace mms

#endif  // MMS__ACTIONS_HPP_
