#include "doctest.h"
#include "mms/augment.hpp"
#include "test_support.hpp"

#include <cmath>
#include <vector>

using namespace mms;
using namespace mms::test;

namespace
{

bool throws_code(const std::function<void()> & fn, ErrorCode expected)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code() == expected;
  }
  return false;
}

Trajectory add_noise(const Trajectory & clean, double std_dev, TestRng & rng)
{
  std::vector<Waypoint> points(clean.waypoints());
  for (auto & p : points) {
    p.x += std_dev * rng.gauss();
    p.y += std_dev * rng.gauss();
  }
  return Trajectory(std::move(points), clean.dt(), clean.t0_offset());
}

double mse_to(const Trajectory & a, const Trajectory & b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dx = a[i].x - b[i].x;
    const double dy = a[i].y - b[i].y;
    sum += dx * dx + dy * dy;
  }
  return sum / static_cast<double>(a.size());
}

}  // namespace

TEST_SUITE("augment")
{

TEST_CASE("smoothing passes model-consistent motion through unchanged")
{
  SUBCASE("constant velocity")
  {
    const Trajectory clean = make_straight_future(9.0);
    const Trajectory smoothed = ekf_smooth(clean);
    for (std::size_t i = 0; i < clean.size(); ++i) {
      CHECK(smoothed[i].x == doctest::Approx(clean[i].x).epsilon(1e-6));
      CHECK(std::abs(smoothed[i].y - clean[i].y) < 1e-3);
    }
  }

  SUBCASE("constant turn rate stays close")
  {
    const Trajectory clean = make_arc_future(8.0, 0.03);
    const Trajectory smoothed = ekf_smooth(clean);
    for (std::size_t i = 0; i < clean.size(); ++i) {
      const double dx = smoothed[i].x - clean[i].x;
      const double dy = smoothed[i].y - clean[i].y;
      CHECK(std::sqrt(dx * dx + dy * dy) < 0.05);
    }
  }
}

TEST_CASE("smoothing reduces synthetic position noise")
{
  const Trajectory clean = make_straight_future(10.0);
  TestRng rng(1234);
  double noisy_total = 0.0;
  double smoothed_total = 0.0;
  int improved = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const Trajectory noisy = add_noise(clean, 0.1, rng);
    const Trajectory smoothed = ekf_smooth(noisy);
    const double noisy_mse = mse_to(noisy, clean);
    const double smoothed_mse = mse_to(smoothed, clean);
    noisy_total += noisy_mse;
    smoothed_total += smoothed_mse;
    if (smoothed_mse < noisy_mse) {
      ++improved;
    }
  }
  CHECK(smoothed_total < noisy_total);
  CHECK(improved >= 90);
}

TEST_CASE("implausible jumps trip the divergence guard")
{
  std::vector<Waypoint> points(kFutureLength);
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i] = {static_cast<double>(i), i % 2 == 0 ? 50.0 : -50.0};
  }
  CHECK(throws_code(
    [&] { ekf_smooth(Trajectory(std::move(points), kSampleDt, kFutureT0Offset)); },
    ErrorCode::kFilterDivergence));
}

TEST_CASE("retiming scales traversed arc length")
{
  SUBCASE("slower factor on a straight expert")
  {
    const Trajectory input = make_straight_future(10.0);
    const Trajectory slower = retime_speed(input, 0.8);
    for (std::size_t k = 0; k < slower.size(); ++k) {
      CHECK(slower[k].x == doctest::Approx(8.0 * slower.time_at(k)).epsilon(1e-9));
      CHECK(slower[k].y == doctest::Approx(0.0));
    }
  }

  SUBCASE("faster factor extends along the terminal tangent")
  {
    const Trajectory input = make_straight_future(10.0);
    const Trajectory faster = retime_speed(input, 1.2);
    CHECK(faster.back().x == doctest::Approx(60.0).epsilon(1e-9));
    CHECK(faster.back().y == doctest::Approx(0.0));
  }

  SUBCASE("arc length ratio holds on curved paths")
  {
    const Trajectory input = make_arc_future(10.0, 0.002);
    const double factor = 0.8;
    const Trajectory output = retime_speed(input, factor);
    const auto polyline_arc = [](const Trajectory & t) {
      double arc = std::sqrt(t[0].x * t[0].x + t[0].y * t[0].y);
      for (std::size_t i = 1; i < t.size(); ++i) {
        const double dx = t[i].x - t[i - 1].x;
        const double dy = t[i].y - t[i - 1].y;
        arc += std::sqrt(dx * dx + dy * dy);
      }
      return arc;
    };
    CHECK(polyline_arc(output) ==
          doctest::Approx(factor * polyline_arc(input)).epsilon(1e-5));
  }

  SUBCASE("geometry is preserved within the covered range")
  {
    // Output points of a slower retiming must lie on the original path. The
    // natural end conditions of the interpolant leave a small bias near the
    // path ends, so the bound is millimetres rather than exact.
    const Trajectory input = make_arc_future(10.0, 0.005);
    const Trajectory output = retime_speed(input, 0.8);
    const double radius = 1.0 / 0.005;
    for (std::size_t k = 0; k < output.size(); ++k) {
      const double distance_to_center =
        std::sqrt(output[k].x * output[k].x + (output[k].y - radius) * (output[k].y - radius));
      CHECK(std::abs(distance_to_center - radius) < 5e-3);
    }
  }

  SUBCASE("slow-then-fast composition recovers the covered path")
  {
    const Trajectory straight = make_straight_future(10.0);
    const Trajectory straight_back = retime_speed(retime_speed(straight, 0.8), 1.25);
    for (std::size_t k = 0; k < straight.size(); ++k) {
      CHECK(straight_back[k].x == doctest::Approx(straight[k].x).epsilon(1e-9));
      CHECK(straight_back[k].y == doctest::Approx(0.0));
    }

    // On a curved path only the stretch the slower copy still covers can be
    // recovered; past it the faster pass extrapolates along the tangent.
    const Trajectory input = make_arc_future(10.0, 0.0005);
    const Trajectory recovered = retime_speed(retime_speed(input, 0.8), 1.25);
    for (std::size_t k = 0; k + 5 < input.size(); ++k) {
      const double dx = recovered[k].x - input[k].x;
      const double dy = recovered[k].y - input[k].y;
      CHECK(std::sqrt(dx * dx + dy * dy) < 1e-3);
    }
  }

  SUBCASE("a stopping expert can still be retimed")
  {
    const Trajectory input = make_sudden_stop_future(10.0, 3.0);
    const Trajectory slower = retime_speed(input, 0.8);
    // Total traversed distance scales with the factor.
    CHECK(slower.back().x == doctest::Approx(0.8 * 30.0).epsilon(1e-9));
  }

  SUBCASE("invalid input is rejected")
  {
    const Trajectory input = make_straight_future(10.0);
    CHECK(throws_code([&] { retime_speed(input, 0.0); }, ErrorCode::kInvalidSpeedFactor));
    CHECK(throws_code([&] { retime_speed(input, -1.0); }, ErrorCode::kInvalidSpeedFactor));
    CHECK(throws_code(
      [] {
        retime_speed(
          Trajectory::future(std::vector<Waypoint>(kFutureLength, {0.0, 0.0})), 0.8);
      },
      ErrorCode::kDegeneratePath));
  }
}

}  // TEST_SUITE
