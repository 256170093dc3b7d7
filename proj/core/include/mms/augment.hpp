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

#ifndef MMS__AUGMENT_HPP_
#define MMS__AUGMENT_HPP_

#include "mms/trajectory.hpp"

namespace mms
{

// Noise model for the constant-turn-rate-and-velocity smoother.
struct KalmanConfig
{
  double accel_std{1.0};      // m/s^2, longitudinal process noise
  double yaw_accel_std{0.3};  // rad/s^2, turn-rate process noise
  double position_std{0.15};  // m, measurement noise per axis
};

// Forward Kalman filter over a constant-turn-rate-and-velocity motion model
// followed by a Rauch-Tung-Striebel backward pass. Waypoints whose
// innovation fails the 99% chi-square gate are skipped; when more than a
// quarter of them fail the filter has diverged and kFilterDivergence is
// thrown. Output keeps the input shape and sampling.
Trajectory ekf_smooth(const Trajectory & trajectory, const KalmanConfig & config = {});

// Re-samples a future trajectory along its own path so the arc length
// traversed per unit time scales by the factor: each output waypoint sits at
// factor times its original cumulative arc length. Factors above 1 continue
// along the terminal tangent once the recorded path is exhausted.
Trajectory retime_speed(const Trajectory & future, double factor);

}  // namespace mms

#endif  // MMS__AUGMENT_HPP_
