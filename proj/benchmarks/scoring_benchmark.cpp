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
#include "mms/scoring.hpp"
#include "mms/trajectory.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace
{

mms::Trajectory straight_past(double speed)
{
  std::vector<mms::Waypoint> points(mms::kPastLength);
  for (std::size_t k = 0; k < points.size(); ++k) {
    points[k] = {(static_cast<double>(k) - 20.0) * speed * mms::kSampleDt, 0.0};
  }
  return mms::Trajectory::past(std::move(points));
}

mms::Trajectory straight_future(double speed)
{
  std::vector<mms::Waypoint> points(mms::kFutureLength);
  for (std::size_t k = 0; k < points.size(); ++k) {
    points[k] = {speed * (0.2 + static_cast<double>(k) * mms::kSampleDt), 0.0};
  }
  return mms::Trajectory::future(std::move(points));
}

mms::Trajectory arc_future(double speed, double curvature)
{
  std::vector<mms::Waypoint> points(mms::kFutureLength);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double t = 0.2 + static_cast<double>(k) * mms::kSampleDt;
    const double theta = curvature * speed * t;
    points[k] = {std::sin(theta) / curvature, (1.0 - std::cos(theta)) / curvature};
  }
  return mms::Trajectory::future(std::move(points));
}

mms::ReferenceSet bench_references(double speed)
{
  std::vector<mms::LabeledReference> refs;
  refs.push_back({mms::ReferenceCategory::kExpertLike, straight_future(speed), ""});
  refs.push_back({mms::ReferenceCategory::kWrongSpeed, straight_future(0.8 * speed), ""});
  refs.push_back({mms::ReferenceCategory::kNeglectInstruction, arc_future(speed, 0.02), ""});
  return mms::ReferenceSet(std::move(refs));
}

void BM_score(benchmark::State & state)
{
  const mms::Trajectory past = straight_past(10.0);
  const mms::ReferenceSet refs = bench_references(10.0);
  const mms::Trajectory plan = arc_future(10.0, 0.004);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::score(plan, past, refs));
  }
}
BENCHMARK(BM_score);

void BM_score_per_waypoint(benchmark::State & state)
{
  const mms::Trajectory past = straight_past(10.0);
  const mms::ReferenceSet refs = bench_references(10.0);
  const mms::Trajectory plan = arc_future(10.0, 0.004);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
      mms::score(plan, past, refs, mms::CheckpointPolicy::kPerWaypoint));
  }
}
BENCHMARK(BM_score_per_waypoint);

void BM_rollout(benchmark::State & state)
{
  const mms::Trajectory past = straight_past(10.0);
  const mms::IntervalActions actions{
    {mms::AccelClass::kAccelSlight, mms::SteerClass::kSlightLeft},
    {mms::AccelClass::kMaintain, mms::SteerClass::kStraight}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::rollout(past, actions));
  }
}
BENCHMARK(BM_rollout);

void BM_classify(benchmark::State & state)
{
  const mms::Trajectory future = arc_future(10.0, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::classify_intervals(future));
  }
}
BENCHMARK(BM_classify);

void BM_average_jerk(benchmark::State & state)
{
  const mms::Trajectory future = arc_future(10.0, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::average_jerk(future));
  }
}
BENCHMARK(BM_average_jerk);

}  // namespace

BENCHMARK_MAIN();
