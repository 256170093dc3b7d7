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

#include "mms/augment.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace mms
{

namespace
{

constexpr double kInnovationGate = 9.21;  // chi-square, 2 dof, 99%
constexpr double kMinTurnRate = 1e-4;     // rad/s, below this predict straight

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat25 = Eigen::Matrix<double, 2, 5>;

double wrap_angle(double a)
{
  while (a > 3.14159265358979323846) a -= 2.0 * 3.14159265358979323846;
  while (a < -3.14159265358979323846) a += 2.0 * 3.14159265358979323846;
  return a;
}

// State: [x, y, heading, speed, turn rate].
Vec5 ctrv_predict(const Vec5 & s, double dt)
{
  const double theta = s(2);
  const double v = s(3);
  const double w = s(4);
  Vec5 out = s;
  if (std::abs(w) > kMinTurnRate) {
    out(0) += v / w * (std::sin(theta + w * dt) - std::sin(theta));
    out(1) += v / w * (-std::cos(theta + w * dt) + std::cos(theta));
  } else {
    out(0) += v * std::cos(theta) * dt;
    out(1) += v * std::sin(theta) * dt;
  }
  out(2) = theta + w * dt;
  return out;
}

Mat5 ctrv_jacobian(const Vec5 & s, double dt)
{
  const double theta = s(2);
  const double v = s(3);
  const double w = s(4);
  Mat5 F = Mat5::Identity();
  if (std::abs(w) > kMinTurnRate) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double stw = std::sin(theta + w * dt);
    const double ctw = std::cos(theta + w * dt);
    F(0, 2) = v / w * (ctw - ct);
    F(0, 3) = (stw - st) / w;
    F(0, 4) = v * dt * ctw / w - v * (stw - st) / (w * w);
    F(1, 2) = v / w * (stw - st);
    F(1, 3) = (-ctw + ct) / w;
    F(1, 4) = v * dt * stw / w - v * (-ctw + ct) / (w * w);
  } else {
    F(0, 2) = -v * std::sin(theta) * dt;
    F(0, 3) = std::cos(theta) * dt;
    F(1, 2) = v * std::cos(theta) * dt;
    F(1, 3) = std::sin(theta) * dt;
  }
  F(2, 4) = dt;
  return F;
}

Mat5 process_noise(const Vec5 & s, double dt, const KalmanConfig & config)
{
  // Acceleration and yaw acceleration act through the kinematics.
  Eigen::Matrix<double, 5, 2> G = Eigen::Matrix<double, 5, 2>::Zero();
  const double half_dt2 = 0.5 * dt * dt;
  G(0, 0) = half_dt2 * std::cos(s(2));
  G(1, 0) = half_dt2 * std::sin(s(2));
  G(2, 1) = half_dt2;
  G(3, 0) = dt;
  G(4, 1) = dt;
  Eigen::Matrix2d noise = Eigen::Matrix2d::Zero();
  noise(0, 0) = config.accel_std * config.accel_std;
  noise(1, 1) = config.yaw_accel_std * config.yaw_accel_std;
  return G * noise * G.transpose();
}

// Natural cubic spline over strictly increasing knots.
class NaturalSpline
{
public:
  NaturalSpline(std::vector<double> knots, std::vector<double> values)
  : u_(std::move(knots)), y_(std::move(values))
  {
    const std::size_t n = u_.size();
    m_.assign(n, 0.0);
    if (n < 3) {
      return;  // linear segment, second derivatives stay zero
    }
    // Thomas solve of the tridiagonal second-derivative system with natural
    // boundary conditions.
    std::vector<double> diag(n, 2.0);
    std::vector<double> upper(n, 0.0);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = u_[i] - u_[i - 1];
      const double h1 = u_[i + 1] - u_[i];
      const double mu = h0 / (h0 + h1);
      const double lambda = 1.0 - mu;
      upper[i] = lambda;
      rhs[i] = 6.0 / (h0 + h1) *
               ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
      // Forward elimination against the previous row (lower coefficient mu).
      if (i > 1) {
        const double w = mu / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    }
  }

  double evaluate(double x) const
  {
    const std::size_t i = interval(x);
    const double h = u_[i + 1] - u_[i];
    const double a = (u_[i + 1] - x) / h;
    const double b = (x - u_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

  double derivative(double x) const
  {
    const std::size_t i = interval(x);
    const double h = u_[i + 1] - u_[i];
    const double a = (u_[i + 1] - x) / h;
    const double b = (x - u_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
  }

private:
  std::size_t interval(double x) const
  {
    const auto it = std::upper_bound(u_.begin(), u_.end(), x);
    const std::size_t raw = static_cast<std::size_t>(it - u_.begin());
    return std::clamp<std::size_t>(raw, 1, u_.size() - 1) - 1;
  }

  std::vector<double> u_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace

Trajectory ekf_smooth(const Trajectory & trajectory, const KalmanConfig & config)
{
  const std::size_t n = trajectory.size();
  const double dt = trajectory.dt();

  // Initialize from the first segment.
  Vec5 state = Vec5::Zero();
  state(0) = trajectory[0].x;
  state(1) = trajectory[0].y;
  const double dx0 = trajectory[1].x - trajectory[0].x;
  const double dy0 = trajectory[1].y - trajectory[0].y;
  state(3) = std::sqrt(dx0 * dx0 + dy0 * dy0) / dt;
  state(2) = state(3) * dt > 1e-9 ? std::atan2(dy0, dx0) : 0.0;

  Mat5 covariance = Mat5::Zero();
  covariance(0, 0) = covariance(1, 1) = config.position_std * config.position_std;
  covariance(2, 2) = 0.09;
  covariance(3, 3) = 1.0;
  covariance(4, 4) = 0.09;

  Mat25 H = Mat25::Zero();
  H(0, 0) = 1.0;
  H(1, 1) = 1.0;
  const Eigen::Matrix2d R =
    Eigen::Matrix2d::Identity() * config.position_std * config.position_std;

  std::vector<Vec5> filtered(n), predicted(n);
  std::vector<Mat5> filtered_cov(n), predicted_cov(n), transitions(n);
  filtered[0] = predicted[0] = state;
  filtered_cov[0] = predicted_cov[0] = covariance;
  transitions[0] = Mat5::Identity();

  std::size_t gated = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const Mat5 F = ctrv_jacobian(state, dt);
    const Vec5 prior = ctrv_predict(state, dt);
    const Mat5 prior_cov =
      F * covariance * F.transpose() + process_noise(state, dt, config);
    transitions[k] = F;
    predicted[k] = prior;
    predicted_cov[k] = prior_cov;

    const Eigen::Vector2d innovation(
      trajectory[k].x - prior(0), trajectory[k].y - prior(1));
    const Eigen::Matrix2d S = H * prior_cov * H.transpose() + R;
    const double nis = innovation.dot(S.inverse() * innovation);
    if (nis > kInnovationGate) {
      ++gated;
      state = prior;
      covariance = prior_cov;
    } else {
      const Eigen::Matrix<double, 5, 2> K = prior_cov * H.transpose() * S.inverse();
      state = prior + K * innovation;
      state(2) = wrap_angle(state(2));
      covariance = (Mat5::Identity() - K * H) * prior_cov;
    }
    filtered[k] = state;
    filtered_cov[k] = covariance;
  }

  if (4 * gated > n - 1) {
    throw Error(
      ErrorCode::kFilterDivergence,
      std::to_string(gated) + " of " + std::to_string(n - 1) + " innovations gated");
  }

  // Rauch-Tung-Striebel backward pass.
  std::vector<Vec5> smoothed(n);
  smoothed[n - 1] = filtered[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    const Mat5 C =
      filtered_cov[k] * transitions[k + 1].transpose() * predicted_cov[k + 1].inverse();
    Vec5 residual = smoothed[k + 1] - predicted[k + 1];
    residual(2) = wrap_angle(residual(2));
    smoothed[k] = filtered[k] + C * residual;
    smoothed[k](2) = wrap_angle(smoothed[k](2));
  }

  std::vector<Waypoint> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = Waypoint{smoothed[k](0), smoothed[k](1)};
  }
  return Trajectory(std::move(out), dt, trajectory.t0_offset());
}

Trajectory retime_speed(const Trajectory & future, double factor)
{
  validate_trajectory(future, TrajectoryKind::kFuture);
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kInvalidSpeedFactor, "factor must be positive");
  }

  // Path knots anchored at the current pose, parameterized by cumulative
  // chordal arc length.
  std::vector<Waypoint> points;
  points.reserve(future.size() + 1);
  points.push_back(Waypoint{0.0, 0.0});
  points.insert(points.end(), future.waypoints().begin(), future.waypoints().end());

  std::vector<double> arc(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double dx = points[i].x - points[i - 1].x;
    const double dy = points[i].y - points[i - 1].y;
    arc[i] = arc[i - 1] + std::sqrt(dx * dx + dy * dy);
  }
  const double total = arc.back();
  if (total < 1e-9) {
    throw Error(ErrorCode::kDegeneratePath, "path has no extent to retime");
  }

  // Collapse repeated knots (a stopped vehicle) so the parameterization is
  // strictly increasing.
  std::vector<double> knots{arc[0]};
  std::vector<double> xs{points[0].x};
  std::vector<double> ys{points[0].y};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (arc[i] - knots.back() > 1e-12) {
      knots.push_back(arc[i]);
      xs.push_back(points[i].x);
      ys.push_back(points[i].y);
    }
  }
  if (knots.size() < 2) {
    throw Error(ErrorCode::kDegeneratePath, "fewer than two distinct waypoints");
  }

  const NaturalSpline spline_x(knots, xs);
  const NaturalSpline spline_y(knots, ys);

  const double end = knots.back();
  const double tx = spline_x.derivative(end);
  const double ty = spline_y.derivative(end);
  const double tangent_norm = std::sqrt(tx * tx + ty * ty);

  std::vector<Waypoint> out;
  out.reserve(future.size());
  for (std::size_t j = 1; j < points.size(); ++j) {
    const double target = factor * arc[j];
    if (target <= end) {
      out.push_back(Waypoint{spline_x.evaluate(target), spline_y.evaluate(target)});
    } else {
      // Continue straight along the terminal tangent.
      const double overshoot = target - end;
      out.push_back(Waypoint{
        xs.back() + overshoot * tx / tangent_norm,
        ys.back() + overshoot * ty / tangent_norm});
    }
  }
  return Trajectory::future(std::move(out));
}

}  // namespace mms
