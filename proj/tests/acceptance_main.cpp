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

// Release gate over the shipped fixture corpus. Twelve independent checks,
// one PASS/FAIL line each; the process exits with the number of failures.
// Checks 11 and 12 drive the installed command line binary end to end, the
// rest call the library directly against independent oracles.

#include "mms/actions.hpp"
#include "mms/augment.hpp"
#include "mms/coherence.hpp"
#include "mms/dataset.hpp"
#include "mms/harness.hpp"
#include "mms/prompt.hpp"
#include "mms/scoring.hpp"
#include "mms/trajectory.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <variant>
#include <vector>

#ifndef MMS_FIXTURE_DIR
#error "MMS_FIXTURE_DIR must point at the shipped fixture corpus"
#endif
#ifndef MMS_CLI_PATH
#error "MMS_CLI_PATH must point at the mms binary"
#endif

namespace
{

using namespace mms;
using mms::test::bisect_amplitude;
using mms::test::make_arc_future;
using mms::test::make_future_from;
using mms::test::make_sine_future;
using mms::test::make_straight_future;
using mms::test::make_straight_past;
using mms::test::TestRng;

constexpr AccelClass kAllAccel[] = {
  AccelClass::kDecelStrong, AccelClass::kDecelSlight, AccelClass::kMaintain,
  AccelClass::kAccelSlight, AccelClass::kAccelStrong};
constexpr SteerClass kAllSteer[] = {
  SteerClass::kLeft, SteerClass::kSlightLeft, SteerClass::kStraight, SteerClass::kSlightRight,
  SteerClass::kRight};

struct CheckFailure
{
  std::string message;
};

void require(bool condition, const std::string & message)
{
  if (!condition) throw CheckFailure{message};
}

std::string fmt(const char * format, double a, double b = 0.0)
{
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, format, a, b);
  return buffer;
}

struct Context
{
  std::vector<Scenario> corpus;
  std::filesystem::path scratch;
};

// ---------------------------------------------------------------------------
// CLI plumbing for the pipeline checks.

int run_cli(const Context & ctx, const std::string & args)
{
  const std::string command = std::string("'") + MMS_CLI_PATH + "' " + args + " > '" +
                              (ctx.scratch / "cli.out").string() + "' 2> '" +
                              (ctx.scratch / "cli.err").string() + "'";
  const int status = std::system(command.c_str());
  if (status < 0) throw CheckFailure{"failed to launch the command line binary"};
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128;
}

std::string slurp(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// 1. Expert self-score ceiling.

std::string check_self_score(Context & ctx)
{
  const auto start = std::chrono::steady_clock::now();
  for (const Scenario & scenario : ctx.corpus) {
    const MmsResult result =
      score(scenario.expert(), scenario.past, scenario.references);
    require(
      result.score == 10.0,
      scenario.id + ": expert self-score " + fmt("%.6f", result.score) + ", want 10");
    const L2Error l2 = l2_error(scenario.expert(), scenario.expert());
    require(
      l2.mean == 0.0 && l2.final_waypoint == 0.0,
      scenario.id + ": expert self-L2 is not exactly zero");
  }
  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(seconds < 5.0, fmt("self-scoring took %.2f s, budget is 5 s", seconds));
  return fmt("%.0f fixtures in ", static_cast<double>(ctx.corpus.size())) +
         fmt("%.2f s", seconds);
}

// ---------------------------------------------------------------------------
// 2. Category ledger with certain similarity.

std::string check_category_ledger(Context & ctx)
{
  struct PlannedCase
  {
    std::string label;
    Trajectory plan;
    ReferenceCategory expected;
    double lo;
    double hi;
  };
  std::size_t plans = 0;
  for (const Scenario & scenario : ctx.corpus) {
    const Trajectory & expert = scenario.expert();
    std::vector<PlannedCase> cases;
    cases.push_back({"expert echo", expert, ReferenceCategory::kExpertLike, 8.0, 10.0});
    cases.push_back(
      {"retimed 0.8x", retime_speed(expert, 0.8), ReferenceCategory::kWrongSpeed, 5.0, 7.0});
    cases.push_back(
      {"retimed 1.2x", retime_speed(expert, 1.2), ReferenceCategory::kWrongSpeed, 5.0, 7.0});
    for (const LabeledReference & reference : scenario.references.entries()) {
      if (reference.category == ReferenceCategory::kNeglectInstruction) {
        cases.push_back(
          {"instruction drift", reference.trajectory, reference.category, 2.0, 4.0});
      }
      if (reference.category == ReferenceCategory::kOffRoadNoCrash) {
        cases.push_back({"off-road swerve", reference.trajectory, reference.category, 1.0, 1.0});
      }
      if (reference.category == ReferenceCategory::kCrash) {
        cases.push_back({"crash stop", reference.trajectory, reference.category, 0.0, 0.0});
      }
    }
    require(cases.size() == 6, scenario.id + ": reference set does not cover all categories");
    for (const PlannedCase & c : cases) {
      const MmsResult result = score(c.plan, scenario.past, scenario.references);
      require(
        result.matched_category == c.expected,
        scenario.id + " " + c.label + ": matched " +
          (result.matched_category ? reference_category_name(*result.matched_category)
                                   : "nothing") +
          ", want " + reference_category_name(c.expected));
      require(
        result.similarity_s >= 0.9,
        scenario.id + " " + c.label + fmt(": similarity %.3f below 0.9", result.similarity_s));
      require(
        result.score >= c.lo && result.score <= c.hi,
        scenario.id + " " + c.label +
          fmt(": score %.3f outside [%.0f", result.score, c.lo) + fmt(", %.0f]", c.hi));
      ++plans;
    }
  }
  return fmt("%.0f plans, 100%% category agreement", static_cast<double>(plans));
}

// ---------------------------------------------------------------------------
// 3. Half-speed plans score zero regardless of shape.

std::string check_half_speed_zero(Context & ctx)
{
  std::size_t plans = 0;
  for (const Scenario & scenario : ctx.corpus) {
    const Trajectory & past = scenario.past;
    const double speed = std::hypot(
      (past[past.size() - 1].x - past[past.size() - 2].x) / past.dt(),
      (past[past.size() - 1].y - past[past.size() - 2].y) / past.dt());
    const Trajectory shapes[] = {
      retime_speed(scenario.expert(), 0.45),
      make_arc_future(0.3 * speed, 0.02),
      make_straight_future(0.2 * speed),
    };
    for (const Trajectory & plan : shapes) {
      const MmsResult result = score(plan, past, scenario.references);
      require(
        result.score == 0.0 && result.case_applied == ScoreCase::kPastInconsistent,
        scenario.id + fmt(": slow plan scored %.3f instead of the flat zero", result.score));
      ++plans;
    }
  }
  return fmt("%.0f slow plans, every one scored 0", static_cast<double>(plans));
}

// ---------------------------------------------------------------------------
// 4. Comfort flags flip exactly at their budgets.

std::string check_comfort_thresholds(Context &)
{
  const double v0 = 12.0;

  const Trajectory jerk_reference = make_sine_future(v0, 0.2, 1.0);
  const double ref_jerk = average_jerk(jerk_reference);
  const bool jerk_expected[] = {false, false, true};
  const double jerk_ratios[] = {1.43, 1.44, 1.45};
  for (int i = 0; i < 3; ++i) {
    const Trajectory plan = make_sine_future(v0, 0.2 * jerk_ratios[i], 1.0);
    const double got = average_jerk(plan) / ref_jerk;
    require(
      std::abs(got - jerk_ratios[i]) < 1e-9,
      fmt("jerk ratio construction drifted: %.12f vs %.2f", got, jerk_ratios[i]));
    const ComfortPenalty penalty = comfort_penalty(plan, jerk_reference);
    require(
      penalty.jerk_flag == jerk_expected[i],
      fmt("jerk ratio %.2f: flag should be %s", jerk_ratios[i]) +
        (jerk_expected[i] ? "set" : "clear"));
    require(!penalty.tortuosity_flag, fmt("jerk ratio %.2f tripped tortuosity", jerk_ratios[i]));
  }

  const Trajectory straight = make_straight_future(v0);
  const double ref_tortuosity = tortuosity(straight);
  const auto tortuosity_of = [&](double amplitude) {
    return tortuosity(make_sine_future(v0, amplitude));
  };
  const bool tort_expected[] = {false, true, true};
  const double tort_ratios[] = {1.05, 1.06, 1.07};
  for (int i = 0; i < 3; ++i) {
    const double amplitude =
      bisect_amplitude(tortuosity_of, tort_ratios[i] * ref_tortuosity, 0.0, 8.0);
    const ComfortPenalty penalty = comfort_penalty(make_sine_future(v0, amplitude), straight);
    require(
      penalty.tortuosity_flag == tort_expected[i],
      fmt("tortuosity ratio %.2f: flag should be %s", tort_ratios[i]) +
        (tort_expected[i] ? "set" : "clear"));
  }
  return "jerk flags (0,0,1) at {1.43,1.44,1.45}, tortuosity (0,1,1) at {1.05,1.06,1.07}";
}

// ---------------------------------------------------------------------------
// 5. Classification inverts the rollout for all 25 pairs.

std::string check_taxonomy_round_trip(Context &)
{
  const Trajectory past = make_straight_past(10.0);
  int exact = 0;
  for (const AccelClass accel : kAllAccel) {
    for (const SteerClass steer : kAllSteer) {
      const ActionPair pair{accel, steer};
      const Trajectory out = rollout(past, {pair, pair});
      const ActionPair got = classify(out, ActionInterval::kFirst3s);
      require(
        got == pair, std::string("pair (") + accel_class_name(accel) + ", " +
                       steer_class_name(steer) + ") came back as (" +
                       accel_class_name(got.accel) + ", " + steer_class_name(got.steer) + ")");
      ++exact;
    }
  }
  require(exact == 25, "expected 25 pairs");
  return "25/25 exact from a straight 10 m/s start";
}

// ---------------------------------------------------------------------------
// 6. Rollout against closed-form motion.

std::string check_kinematics_oracle(Context &)
{
  std::size_t checked = 0;
  for (const double v0 : {10.0, 25.0}) {
    const Trajectory past = make_straight_past(v0);

    // Constant acceleration, straight: piecewise quadratic with a standstill
    // clamp, controls re-chosen from the speed at the second interval.
    for (const AccelClass accel : kAllAccel) {
      const Trajectory out =
        rollout(past, {{accel, SteerClass::kStraight}, {accel, SteerClass::kStraight}});
      const double a1 = control_params(accel, SteerClass::kStraight, v0).acceleration;
      const auto segment = [](double v, double a, double t, double t_max) {
        const double t_stop = a < 0.0 ? std::min(v / -a, t_max) : t_max;
        const double tt = std::min(t, t_stop);
        return std::pair<double, double>{
          v * tt + 0.5 * a * tt * tt, t < t_stop ? v + a * t : 0.0};
      };
      const auto [x3, v3] = segment(v0, a1, 3.0, 3.0);
      const double a2 = control_params(accel, SteerClass::kStraight, v3).acceleration;
      for (std::size_t k = 0; k < out.size(); ++k) {
        const double t = out.time_at(k);
        double expected;
        if (t <= 3.0) {
          expected = segment(v0, a1, t, 3.0).first;
        } else {
          expected = x3 + segment(v3, a2, t - 3.0, 2.0).first;
        }
        require(
          std::abs(out[k].x - expected) <= 1e-3 && std::abs(out[k].y) <= 1e-3,
          std::string(accel_class_name(accel)) +
            fmt(" at %.0f m/s: waypoint drifts %.6f m", v0, std::abs(out[k].x - expected)));
        ++checked;
      }
    }

    // Constant speed, constant steering: a circular arc.
    for (const SteerClass steer : kAllSteer) {
      const Trajectory out =
        rollout(past, {{AccelClass::kMaintain, steer}, {AccelClass::kMaintain, steer}});
      const double degrees = control_params(AccelClass::kMaintain, steer, v0).steering_angle_deg;
      const double curvature = std::tan(degrees * M_PI / 180.0) / kDefaultWheelbase;
      for (std::size_t k = 0; k < out.size(); ++k) {
        const double t = out.time_at(k);
        double ex;
        double ey;
        if (std::abs(curvature) < 1e-15) {
          ex = v0 * t;
          ey = 0.0;
        } else {
          const double theta = curvature * v0 * t;
          ex = std::sin(theta) / curvature;
          ey = (1.0 - std::cos(theta)) / curvature;
        }
        require(
          std::hypot(out[k].x - ex, out[k].y - ey) <= 1e-3,
          std::string(steer_class_name(steer)) +
            fmt(" at %.0f m/s: arc deviates %.6f m", v0, std::hypot(out[k].x - ex, out[k].y - ey)));
        ++checked;
      }
    }
  }
  return fmt("%.0f waypoints within 1e-3 m of the closed forms", static_cast<double>(checked));
}

// ---------------------------------------------------------------------------
// 7. Numeric oracles: jerk, tortuosity, correlation.

std::string check_numeric_oracles(Context &)
{
  // Independent finite-difference jerk on an irregular but smooth path.
  const Trajectory wiggle = make_future_from([](double t) {
    return Waypoint{11.0 * t + 0.4 * std::sin(1.7 * t), 0.9 * std::sin(2.3 * t + 0.5)};
  });
  double oracle = 0.0;
  const double dt3 = std::pow(wiggle.dt(), 3.0);
  for (std::size_t k = 0; k + 3 < wiggle.size(); ++k) {
    const double dx =
      wiggle[k + 3].x - 3.0 * wiggle[k + 2].x + 3.0 * wiggle[k + 1].x - wiggle[k].x;
    const double dy =
      wiggle[k + 3].y - 3.0 * wiggle[k + 2].y + 3.0 * wiggle[k + 1].y - wiggle[k].y;
    oracle += std::hypot(dx, dy) / dt3;
  }
  oracle /= static_cast<double>(wiggle.size());
  const double jerk = average_jerk(wiggle);
  require(
    std::abs(jerk - oracle) <= 1e-9,
    fmt("average jerk %.12f disagrees with the finite-difference oracle %.12f", jerk, oracle));

  // Dense semicircle: arc over chord is pi/2.
  std::vector<Waypoint> semicircle;
  const std::size_t n = 400;
  for (std::size_t k = 0; k <= n; ++k) {
    const double theta = M_PI * static_cast<double>(k) / static_cast<double>(n);
    semicircle.push_back({20.0 * std::sin(theta), 20.0 * (1.0 - std::cos(theta))});
  }
  const double ratio = tortuosity(Trajectory(std::move(semicircle), kSampleDt, kSampleDt));
  require(
    std::abs(ratio - M_PI / 2.0) <= 1e-3,
    fmt("semicircle tortuosity %.6f is not pi/2 within 1e-3", ratio));

  // Exact linear data correlates at plus and minus one.
  std::vector<std::pair<double, double>> rising;
  std::vector<std::pair<double, double>> falling;
  for (int k = 0; k < 10; ++k) {
    const double x = static_cast<double>(k);
    rising.emplace_back(x, 2.0 * x - 3.0);
    falling.emplace_back(x, -0.5 * x + 4.0);
  }
  const LinearFit up = pearson_and_fit(rising);
  const LinearFit down = pearson_and_fit(falling);
  require(std::abs(up.r - 1.0) <= 1e-12, fmt("rising line r = %.15f", up.r));
  require(std::abs(up.slope - 2.0) <= 1e-12, fmt("rising slope = %.15f", up.slope));
  require(std::abs(up.intercept + 3.0) <= 1e-12, fmt("rising intercept = %.15f", up.intercept));
  require(std::abs(down.r + 1.0) <= 1e-12, fmt("falling line r = %.15f", down.r));
  return "jerk, semicircle, and correlation all inside their tolerances";
}

// ---------------------------------------------------------------------------
// 8. Retiming scales the horizon and preserves geometry.

std::string check_retiming(Context &)
{
  const Trajectory expert = make_straight_future(10.0);

  const Trajectory faster = retime_speed(expert, 1.2);
  require(
    std::abs(faster.back().x - 60.0) <= 1e-6,
    fmt("1.2x retime ends at %.9f m, want 60", faster.back().x));
  for (std::size_t k = 0; k < faster.size(); ++k) {
    require(
      std::abs(faster[k].y) <= 1e-6,
      fmt("1.2x retime leaves the line by %.9f m", std::abs(faster[k].y)));
  }

  const Trajectory recovered = retime_speed(retime_speed(expert, 0.8), 1.25);
  require(recovered.size() == expert.size(), "composition changed the waypoint count");
  for (std::size_t k = 0; k < expert.size(); ++k) {
    const double error = std::hypot(recovered[k].x - expert[k].x, recovered[k].y - expert[k].y);
    require(
      error <= 1e-3, fmt("0.8-then-1.25 composition misses waypoint by %.6f m", error));
  }
  return "1.2x horizon exact to 1e-6, composed retime within 1e-3";
}

// ---------------------------------------------------------------------------
// 9. Coherence: perfect on self-consistent data, chance on shuffled data,
//    scale-invariant classification.

std::string check_coherence(Context & ctx)
{
  MockEmbeddingProvider provider;
  LanguageCentroids centroids;
  centroids.emplace(
    Language::kEn, build_centroids(provider, builtin_phrases(), Language::kEn));

  std::vector<ReasoningTrace> traces;
  std::vector<Trajectory> plans;
  for (const Scenario & scenario : ctx.corpus) {
    traces.push_back(scenario.traces.front());
    plans.push_back(scenario.expert());
  }
  const CoherenceResult self = coherence_score(traces, plans, provider, centroids);
  require(self.excluded.empty(), "self-consistent corpus excluded scenarios");
  require(
    self.accel_first_rate == 1.0 && self.accel_last_rate == 1.0 &&
      self.steer_first_rate == 1.0 && self.steer_last_rate == 1.0 && self.overall == 1.0,
    fmt(
      "self-consistent corpus scored %.3f / %.3f", self.accel_first_rate,
      self.accel_last_rate) +
      fmt(" / %.3f / %.3f accel/steer instead of all 1.00", self.steer_first_rate,
          self.steer_last_rate));

  // Shuffled traces: the described class is drawn independently of the
  // plan, so every cell sits at one-in-five agreement.
  const char * accel_phrase[] = {
    "brake hard", "slow down a little", "maintain the current speed", "accelerate gently",
    "accelerate hard"};
  const char * steer_phrase[] = {
    "turn left", "steer slightly to the left", "keep steering straight",
    "steer slightly to the right", "turn right"};
  TestRng rng(20260817);
  const Trajectory past = make_straight_past(10.0);
  std::vector<ReasoningTrace> null_traces;
  std::vector<Trajectory> null_plans;
  for (int k = 0; k < 400; ++k) {
    ReasoningTrace trace;
    trace.language = Language::kEn;
    trace.situational_awareness = "shuffled control sample";
    trace.accel_first_3s = accel_phrase[rng.index(5)];
    trace.steer_first_3s = steer_phrase[rng.index(5)];
    trace.accel_last_2s = accel_phrase[rng.index(5)];
    trace.steer_last_2s = steer_phrase[rng.index(5)];
    null_traces.push_back(std::move(trace));
    const IntervalActions actions{
      {kAllAccel[rng.index(5)], kAllSteer[rng.index(5)]},
      {kAllAccel[rng.index(5)], kAllSteer[rng.index(5)]}};
    null_plans.push_back(rollout(past, actions));
  }
  const CoherenceResult null_result =
    coherence_score(null_traces, null_plans, provider, centroids);
  for (const double rate :
       {null_result.accel_first_rate, null_result.accel_last_rate,
        null_result.steer_first_rate, null_result.steer_last_rate, null_result.overall}) {
    require(
      std::abs(rate - 0.2) <= 0.08,
      fmt("shuffled corpus cell rate %.4f strays from 0.2 by more than 0.08", rate));
  }

  // Rocchio assignment must not depend on the embedding's magnitude.
  const CentroidSet & en = centroids.at(Language::kEn);
  const std::size_t dimension = en.accel.front().centroid.values().size();
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<double> z(dimension);
    for (auto & value : z) value = rng.gaussian();
    const double alpha = std::exp(rng.uniform(-6.9, 6.9));
    std::vector<double> scaled = z;
    for (auto & value : scaled) value *= alpha;
    const Embedding raw{std::vector<double>(z)};
    const Embedding stretched{std::move(scaled)};
    require(
      rocchio_classify(raw, en.accel) == rocchio_classify(stretched, en.accel) &&
        rocchio_classify(raw, en.steer) == rocchio_classify(stretched, en.steer),
      fmt("scaling an embedding by %.4f changed its class on draw %.0f", alpha,
          static_cast<double>(draw)));
  }
  return fmt(
           "corpus 1.00 on all five columns, shuffled cells near 0.2 (overall %.3f)",
           null_result.overall) +
         ", 1000 scale draws stable";
}

// ---------------------------------------------------------------------------
// 10. Printed template blocks round-trip; adversarial completions parse.

const char * kWaypointBlock =
  "(6.18, 0.15), (12.34, 0.28), (18.52, 0.41), (24.71, 0.52), (30.87, 0.63), (37.04, 0.71), "
  "(43.22, 0.78), (49.39, 0.88), (55.56, 0.94), (61.73, 1.03), (67.9, 1.12), (74.08, 1.2), "
  "(80.27, 1.33), (86.43, 1.49), (92.6, 1.65), (98.76, 1.84), (104.92, 2.07), (111.08, 2.31), "
  "(117.23, 2.57), (123.37, 2.87), (129.52, 3.18), (135.68, 3.5), (141.83, 3.84), "
  "(147.97, 4.16), (154.12, 4.48)";

std::string action_block()
{
  return
    "<situational_awareness>I'm driving on a highway in the middle lane at about 110 "
    "kilometers per hour. I was just overtaking a truck in the right lane when a car in the "
    "left lane overtook me. In front of me, there is a lot of space in my lane and in the "
    "right lane.</situational_awareness>\n"
    "<acceleration_first_3s>maintaining the current speed</acceleration_first_3s>\n"
    "<reason_acceleration_first_3s>to perform a lane change</reason_acceleration_first_3s>\n"
    "<steering_first_3s>steering slightly to the right</steering_first_3s>\n"
    "<reason_steering_first_3s>to perform a smooth lane change to the right "
    "lane</reason_steering_first_3s>\n"
    "<acceleration_last_2s>maintaining the current speed</acceleration_last_2s>\n"
    "<reason_acceleration_last_2s>to finish the lane change</reason_acceleration_last_2s>\n"
    "<steering_last_2s>steering slightly to the left</steering_last_2s>\n"
    "<reason_steering_last_2s>to center the car in the right lane</reason_steering_last_2s>";
}

std::string check_parser_fidelity(Context &)
{
  // The 25-waypoint example block prints back byte for byte.
  const ParsedTrajectory parsed =
    parse_trajectory(std::string("<trajectory>") + kWaypointBlock + "</trajectory>");
  require(parsed.warnings.empty(), "canonical waypoint block produced warnings");
  require(
    format_waypoint_list(parsed.trajectory) == kWaypointBlock,
    "waypoint block did not survive the print-parse round trip");

  // The command example block parses to its exact field texts and composes
  // back to the identical document.
  const std::string block = action_block();
  const ParsedActions actions = parse_actions(block);
  require(actions.warnings.empty(), "canonical action block produced warnings");
  const ActionFields & f = actions.fields;
  require(
    f.actions ==
      IntervalActions{
        {AccelClass::kMaintain, SteerClass::kSlightRight},
        {AccelClass::kMaintain, SteerClass::kSlightLeft}},
    "canonical action block classified to the wrong commands");
  const std::string recomposed =
    "<situational_awareness>" + f.situational_awareness + "</situational_awareness>\n" +
    "<acceleration_first_3s>" + f.acceleration_first_3s + "</acceleration_first_3s>\n" +
    "<reason_acceleration_first_3s>" + f.reason_acceleration_first_3s +
    "</reason_acceleration_first_3s>\n" + "<steering_first_3s>" + f.steering_first_3s +
    "</steering_first_3s>\n" + "<reason_steering_first_3s>" + f.reason_steering_first_3s +
    "</reason_steering_first_3s>\n" + "<acceleration_last_2s>" + f.acceleration_last_2s +
    "</acceleration_last_2s>\n" + "<reason_acceleration_last_2s>" +
    f.reason_acceleration_last_2s + "</reason_acceleration_last_2s>\n" + "<steering_last_2s>" +
    f.steering_last_2s + "</steering_last_2s>\n" + "<reason_steering_last_2s>" +
    f.reason_steering_last_2s + "</reason_steering_last_2s>";
  require(recomposed == block, "action block did not recompose byte for byte");

  // Twenty hostile but answerable completions. Each must parse without
  // throwing; the ones built around a documented tolerance must say so in
  // their warnings.
  struct Hostile
  {
    std::string label;
    std::string text;
    bool trajectory;
    bool expect_warning;
  };
  const std::string valid = std::string("<trajectory>") + kWaypointBlock + "</trajectory>";
  std::vector<Hostile> fixtures;

  std::string extra = "<trajectory>";
  for (int k = 0; k < 28; ++k) extra += fmt("(%.1f, 0.0), ", 2.0 * (k + 1));
  extra += "</trajectory>";
  std::string spaced = "<trajectory>";
  for (int k = 0; k < 25; ++k) spaced += fmt("( %.1f ,\t0.0 )\n", 2.0 * (k + 1));
  spaced += "</trajectory>";
  std::string precise = "<trajectory>";
  for (int k = 0; k < 25; ++k) {
    precise += fmt("(%.15f, %.15f), ", 2.000000000000004 * (k + 1), 1e-14 * k);
  }
  precise += "</trajectory>";
  std::string negative = "<trajectory>";
  for (int k = 0; k < 25; ++k) negative += fmt("(-%.2f, -0.0), ", 1.5 * (k + 1));
  negative += "</trajectory>";
  std::string padded = "<trajectory>";
  for (int k = 0; k < 25; ++k) padded += fmt("(%.4f, 0.2500), ", 2.0 * (k + 1));
  padded += "</trajectory>";

  fixtures.push_back({"draft then final block", "Draft: <trajectory>(1.0, 0.0)</trajectory> "
                      "final answer " + valid, true, true});
  fixtures.push_back({"28 waypoints", extra, true, true});
  fixtures.push_back({"whitespace inside pairs", spaced, true, false});
  fixtures.push_back({"15-digit coordinates", precise, true, false});
  fixtures.push_back({"negative zeros", negative, true, false});
  fixtures.push_back({"zero-padded decimals", padded, true, false});
  fixtures.push_back({"prose after the block", valid + " I hope this helps!", true, false});
  fixtures.push_back({"prose before the block", "Considering the scene carefully.\n" + valid,
                      true, false});
  fixtures.push_back({"two identical blocks", valid + "\n" + valid, true, true});
  fixtures.push_back({"trailing comma", std::string("<trajectory>") + kWaypointBlock +
                      ",</trajectory>", true, false});

  const std::string base = action_block();
  fixtures.push_back(
    {"duplicate command tag",
     base + "\n<acceleration_first_3s>decelerating slightly</acceleration_first_3s>", false,
     true});
  fixtures.push_back(
    {"reordered fields",
     "<steering_first_3s>turning left</steering_first_3s>"
     "<acceleration_first_3s>decelerating slightly</acceleration_first_3s>"
     "<acceleration_last_2s>accelerating slightly</acceleration_last_2s>"
     "<steering_last_2s>steering straight</steering_last_2s>",
     false, true});
  fixtures.push_back(
    {"commands only, no reasons",
     "<acceleration_first_3s>maintaining the current speed</acceleration_first_3s>"
     "<steering_first_3s>steering straight</steering_first_3s>"
     "<acceleration_last_2s>maintaining the current speed</acceleration_last_2s>"
     "<steering_last_2s>steering straight</steering_last_2s>",
     false, true});
  fixtures.push_back(
    {"capitalized command with period",
     "<acceleration_first_3s>Maintaining the current speed.</acceleration_first_3s>"
     "<steering_first_3s>Steering straight.</steering_first_3s>"
     "<acceleration_last_2s>Decelerating slightly.</acceleration_last_2s>"
     "<steering_last_2s>Turning slightly right.</steering_last_2s>",
     false, true});
  fixtures.push_back(
    {"underscored commands",
     "<acceleration_first_3s>maintain_speed</acceleration_first_3s>"
     "<steering_first_3s>steer_straight</steering_first_3s>"
     "<acceleration_last_2s>accelerate_slightly</acceleration_last_2s>"
     "<steering_last_2s>turn_right</steering_last_2s>",
     false, true});
  fixtures.push_back(
    {"unknown extra tag", base + "\n<confidence>very high</confidence>", false, false});
  fixtures.push_back(
    {"newline-padded fields",
     "<acceleration_first_3s>\n  maintaining the current speed\n</acceleration_first_3s>"
     "<steering_first_3s>\n  steering straight\n</steering_first_3s>"
     "<acceleration_last_2s>\n  maintaining the current speed\n</acceleration_last_2s>"
     "<steering_last_2s>\n  steering straight\n</steering_last_2s>",
     false, true});
  fixtures.push_back({"answer repeated twice", base + "\n" + base, false, true});
  fixtures.push_back(
    {"synonym wording",
     "<acceleration_first_3s>keep the current speed</acceleration_first_3s>"
     "<steering_first_3s>steering slightly to the right</steering_first_3s>"
     "<acceleration_last_2s>maintaining the current speed</acceleration_last_2s>"
     "<steering_last_2s>steering straight</steering_last_2s>",
     false, true});
  fixtures.push_back({"prose around the answer",
                      "Let me think about the scene first.\n" + base + "\nDone.", false, false});

  require(fixtures.size() == 20, "expected exactly 20 hostile fixtures");
  std::size_t with_warnings = 0;
  for (const Hostile & hostile : fixtures) {
    try {
      std::vector<std::string> warnings;
      if (hostile.trajectory) {
        warnings = parse_trajectory(hostile.text).warnings;
      } else {
        warnings = parse_actions(hostile.text).warnings;
      }
      if (hostile.expect_warning) {
        require(!warnings.empty(), hostile.label + ": expected a documented warning");
        ++with_warnings;
      }
    } catch (const Error & e) {
      throw CheckFailure{hostile.label + ": parser threw " + e.what()};
    }
  }
  return fmt(
    "both example blocks exact, 20 hostile completions parsed (%.0f warned)",
    static_cast<double>(with_warnings));
}

// ---------------------------------------------------------------------------
// 11. Reports are byte-identical across worker counts.

std::string check_worker_determinism(Context & ctx)
{
  // A prediction file with varied quality, two models, and a coverage gap,
  // so every report section has content.
  std::vector<PredictionRecord> records;
  std::size_t index = 0;
  for (const Scenario & scenario : ctx.corpus) {
    if (scenario.split != Split::kTest) continue;
    PredictionRecord alpha;
    alpha.scenario_id = scenario.id;
    alpha.model_id = "alpha";
    alpha.mode = PromptMode::kZeroShot;
    alpha.trajectory = scenario.expert();
    records.push_back(std::move(alpha));
    if (index % 5 != 4) {
      PredictionRecord beta;
      beta.scenario_id = scenario.id;
      beta.model_id = "beta";
      beta.mode = PromptMode::kFewShot;
      beta.trajectory = scenario.references[1 + index % 4].trajectory;
      records.push_back(std::move(beta));
    }
    ++index;
  }
  const std::string predictions = (ctx.scratch / "varied.jsonl").string();
  save_predictions(records, predictions);

  const std::string common = std::string("score --corpus '") + MMS_FIXTURE_DIR +
                             "' --predictions '" + predictions + "' --allow-partial";
  for (const char * flavor : {"markdown", "csv"}) {
    for (const int workers : {1, 8}) {
      const std::string out =
        (ctx.scratch / (std::string("workers_") + std::to_string(workers) + "." + flavor))
          .string();
      const std::string detail =
        (ctx.scratch / (std::string("detail_") + std::to_string(workers) + "." + flavor))
          .string();
      const int code = run_cli(
        ctx, common + " --format " + flavor + " --workers " + std::to_string(workers) +
               " --out '" + out + "' --detail '" + detail + "'");
      require(code == 0, std::string("scoring run exited ") + std::to_string(code));
    }
    const std::string one = slurp(ctx.scratch / (std::string("workers_1.") + flavor));
    const std::string eight = slurp(ctx.scratch / (std::string("workers_8.") + flavor));
    require(!one.empty() && one == eight, std::string(flavor) + " reports differ by worker count");
    const std::string d1 = slurp(ctx.scratch / (std::string("detail_1.") + flavor));
    const std::string d8 = slurp(ctx.scratch / (std::string("detail_8.") + flavor));
    require(!d1.empty() && d1 == d8, std::string(flavor) + " detail rows differ by worker count");
  }
  return "markdown, csv, and detail outputs byte-identical at 1 and 8 workers";
}

// ---------------------------------------------------------------------------
// 12. Full pipeline: prompts, a scripted echo model, rollout, scoring.

std::string check_pipeline(Context & ctx)
{
  const auto start = std::chrono::steady_clock::now();
  const std::filesystem::path prompts = ctx.scratch / "prompts";

  int code = run_cli(
    ctx, std::string("prompt --corpus '") + MMS_FIXTURE_DIR +
           "' --mode few_shot_cot_kinematic --examples "
           "train_intersection_01,train_heavy_rain_01,train_overtake_01 --out '" +
           prompts.string() + "'");
  require(code == 0, std::string("prompt rendering exited ") + std::to_string(code));

  // The scripted model reads each rendered prompt, takes the command
  // wordings from the prompt's own allowed lists, and answers with the
  // actions that reproduce the expert.
  std::vector<PredictionRecord> echoes;
  for (const Scenario & scenario : ctx.corpus) {
    if (scenario.split != Split::kTest) continue;
    const std::string prompt = slurp(prompts / (scenario.id + ".prompt.txt"));
    require(
      prompt.find(kPromptTemplateVersion) != std::string::npos,
      scenario.id + ": prompt is missing the template version banner");
    const IntervalActions actions = classify_intervals(scenario.expert());
    const auto wording = [&prompt, &scenario](const char * text) {
      require(
        prompt.find(std::string("- ") + text) != std::string::npos,
        scenario.id + ": prompt does not offer the command \"" + std::string(text) + "\"");
      return std::string(text);
    };
    PredictionRecord record;
    record.scenario_id = scenario.id;
    record.model_id = "scripted-echo";
    record.mode = PromptMode::kFewShotCotKinematic;
    record.raw_completion =
      "<situational_awareness>" + scenario.traces.front().situational_awareness +
      "</situational_awareness>\n<acceleration_first_3s>" +
      wording(accel_command_wording(actions.first_3s.accel)) +
      "</acceleration_first_3s>\n<reason_acceleration_first_3s>steady "
      "progress</reason_acceleration_first_3s>\n<steering_first_3s>" +
      wording(steer_command_wording(actions.first_3s.steer)) +
      "</steering_first_3s>\n<reason_steering_first_3s>follow the "
      "route</reason_steering_first_3s>\n<acceleration_last_2s>" +
      wording(accel_command_wording(actions.last_2s.accel)) +
      "</acceleration_last_2s>\n<reason_acceleration_last_2s>keep it "
      "smooth</reason_acceleration_last_2s>\n<steering_last_2s>" +
      wording(steer_command_wording(actions.last_2s.steer)) +
      "</steering_last_2s>\n<reason_steering_last_2s>stay "
      "centered</reason_steering_last_2s>";
    echoes.push_back(std::move(record));
  }
  const std::string completions = (ctx.scratch / "echo.jsonl").string();
  save_predictions(echoes, completions);

  const std::string rolled = (ctx.scratch / "rolled.jsonl").string();
  code = run_cli(
    ctx, std::string("rollout --corpus '") + MMS_FIXTURE_DIR + "' --predictions '" +
           completions + "' --out '" + rolled + "'");
  require(code == 0, std::string("rollout exited ") + std::to_string(code));

  const std::string report = (ctx.scratch / "pipeline.csv").string();
  code = run_cli(
    ctx, std::string("score --corpus '") + MMS_FIXTURE_DIR + "' --predictions '" + rolled +
           "' --format csv --out '" + report + "'");
  require(code == 0, std::string("scoring exited ") + std::to_string(code));

  // One summary row: model scripted-echo, avg_mms in column 3.
  std::istringstream csv(slurp(report));
  std::string line;
  std::getline(csv, line);
  require(line.rfind("model_id,", 0) == 0, "summary csv lost its header");
  require(std::getline(csv, line).good(), "summary csv has no data row");
  std::istringstream cells(line);
  std::string model;
  std::string mode;
  std::string avg;
  std::getline(cells, model, ',');
  std::getline(cells, mode, ',');
  std::getline(cells, avg, ',');
  require(model == "scripted-echo", "unexpected summary row " + line);
  const double avg_mms = std::strtod(avg.c_str(), nullptr);
  require(avg_mms >= 8.0, fmt("pipeline average score %.3f is below 8", avg_mms));

  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(seconds < 60.0, fmt("pipeline took %.1f s, budget is 60 s", seconds));
  return fmt("average score %.2f over the scripted echo model in ", avg_mms) +
         fmt("%.1f s", seconds);
}

}  // namespace

int main()
{
  Context ctx;
  ctx.scratch =
    std::filesystem::temp_directory_path() / ("mms-acceptance-" + std::to_string(::getpid()));
  std::error_code ec;
  std::filesystem::create_directories(ctx.scratch, ec);
  if (ec) {
    std::cerr << "cannot create scratch directory " << ctx.scratch << "\n";
    return 12;
  }

  try {
    ctx.corpus = load_corpus(MMS_FIXTURE_DIR);
  } catch (const Error & e) {
    std::cerr << "cannot load the fixture corpus: " << e.what() << "\n";
    return 12;
  }

  struct NamedCheck
  {
    const char * label;
    std::function<std::string(Context &)> run;
  };
  const NamedCheck checks[] = {
    {"expert self-score hits the 10.0 ceiling with zero displacement", check_self_score},
    {"category plans land in their score bands with certain similarity",
     check_category_ledger},
    {"plans at half the reference speed or below score a flat zero", check_half_speed_zero},
    {"comfort flags flip exactly at the jerk and tortuosity budgets",
     check_comfort_thresholds},
    {"classification inverts the rollout for all 25 action pairs", check_taxonomy_round_trip},
    {"rollout matches constant-acceleration and constant-curvature closed forms",
     check_kinematics_oracle},
    {"jerk, tortuosity, and correlation agree with independent oracles",
     check_numeric_oracles},
    {"speed retiming rescales the horizon and preserves geometry", check_retiming},
    {"coherence is perfect on consistent data and chance on shuffled data", check_coherence},
    {"printed example blocks round-trip and hostile completions parse", check_parser_fidelity},
    {"score reports are byte-identical across worker counts", check_worker_determinism},
    {"prompt, scripted echo model, rollout, and scoring compose end to end", check_pipeline},
  };

  int failures = 0;
  int number = 0;
  for (const NamedCheck & check : checks) {
    ++number;
    try {
      const std::string detail = check.run(ctx);
      std::printf("PASS %2d/12 %s (%s)\n", number, check.label, detail.c_str());
    } catch (const CheckFailure & f) {
      ++failures;
      std::printf("FAIL %2d/12 %s\n           %s\n", number, check.label, f.message.c_str());
    } catch (const std::exception & e) {
      ++failures;
      std::printf("FAIL %2d/12 %s\n           unexpected exception: %s\n", number, check.label,
                  e.what());
    }
    std::fflush(stdout);
  }

  if (failures == 0) {
    std::filesystem::remove_all(ctx.scratch, ec);
  } else {
    std::fprintf(stderr, "scratch outputs kept in %s\n", ctx.scratch.string().c_str());
  }
  return failures;
}
