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

// Generates the synthetic fixture corpus: 21 test scenarios spanning all
// seven types plus 3 train scenarios usable as few-shot examples. Every
// expert is an exact bicycle rollout of its scenario's action pair, every
// reference set covers all five categories, and every trace sentence opens
// with a command phrase the prompt templates and the offline embedding
// provider both recognize. Generation refuses to write a corpus that does
// not verify these properties against the library itself.

#include "mms/actions.hpp"
#include "mms/augment.hpp"
#include "mms/coherence.hpp"
#include "mms/dataset.hpp"
#include "mms/prompt.hpp"
#include "mms/scoring.hpp"
#include "mms/trajectory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace
{

using namespace mms;

class SplitMix
{
public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next()
  {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  const T & pick(const std::vector<T> & pool)
  {
    return pool[next() % pool.size()];
  }

private:
  std::uint64_t state_;
};

Trajectory straight_past(double speed)
{
  std::vector<Waypoint> points(kPastLength);
  for (std::size_t k = 0; k < kPastLength; ++k) {
    points[k] = Waypoint{(static_cast<double>(k) - 20.0) * speed * kSampleDt, 0.0};
  }
  return Trajectory::past(std::move(points));
}

Trajectory future_from(const std::function<Waypoint(double)> & position)
{
  std::vector<Waypoint> points(kFutureLength);
  for (std::size_t k = 0; k < kFutureLength; ++k) {
    points[k] = position(kFutureT0Offset + static_cast<double>(k) * kSampleDt);
  }
  return Trajectory::future(std::move(points));
}

Trajectory arc_future(double speed, double curvature)
{
  return future_from([=](double t) {
    const double theta = curvature * speed * t;
    return Waypoint{std::sin(theta) / curvature, (1.0 - std::cos(theta)) / curvature};
  });
}

Trajectory sudden_stop_future(double speed, double stop_time)
{
  return future_from([=](double t) { return Waypoint{speed * std::min(t, stop_time), 0.0}; });
}

// Command phrases accepted by both the prompt normalizer and the pinned
// phrase table, so rendered traces classify correctly offline.
const std::vector<std::string> & accel_phrases(AccelClass c)
{
  static const std::vector<std::string> table[] = {
    {"brake hard", "slow down sharply", "decelerate strongly"},
    {"slow down a little", "ease off the accelerator", "reduce speed slightly"},
    {"maintain the current speed", "keep the current speed", "hold this speed"},
    {"accelerate gently", "speed up a little", "gradually gain speed"},
    {"accelerate hard", "speed up quickly", "floor the accelerator"},
  };
  return table[static_cast<std::size_t>(c)];
}

const std::vector<std::string> & steer_phrases(SteerClass c)
{
  static const std::vector<std::string> table[] = {
    {"turn left", "make a left turn", "take the left turn"},
    {"steer slightly to the left", "bear left"},
    {"keep steering straight", "go straight ahead", "continue straight", "hold the lane"},
    {"steer slightly to the right", "bear right"},
    {"turn right", "make a right turn", "take the right turn"},
  };
  return table[static_cast<std::size_t>(c)];
}

const std::vector<std::string> & accel_reasons()
{
  static const std::vector<std::string> pool = {
    "to keep a safe gap", "to match the flow of traffic", "so the tires keep their grip",
    "to stay inside the limit"};
  return pool;
}

const std::vector<std::string> & steer_reasons()
{
  static const std::vector<std::string> pool = {
    "to stay centered in my lane", "to follow the lane markings", "to line up with the gap",
    "to track the route"};
  return pool;
}

const char * situational_awareness(ScenarioType type)
{
  switch (type) {
    case ScenarioType::kSpecificallySelected:
      return "Light traffic, dry road, clear lane markings.";
    case ScenarioType::kHeavyRain:
      return "Heavy rain, spray off the truck ahead, wipers on full.";
    case ScenarioType::kConstructionZone:
      return "Cones narrow the lane ahead, workers behind the barrier.";
    case ScenarioType::kOvertakeLaneChange:
      return "Slower car ahead in my lane, the left lane is clear.";
    case ScenarioType::kIntersection:
      return "Signalized intersection ahead, the light is green.";
    case ScenarioType::kNighttime:
      return "Dark rural road, headlights on, no oncoming traffic.";
    case ScenarioType::kSnowWintryMix:
      return "Packed snow on the lane, tire tracks visible.";
  }
  return "";
}

struct Blueprint
{
  std::string id;
  Split split;
  ScenarioType type;
  double base_speed;
  IntervalActions actions;
  std::string instruction;
  bool video{false};
};

std::vector<Blueprint> blueprints()
{
  constexpr auto kM = AccelClass::kMaintain;
  constexpr auto kDS = AccelClass::kDecelSlight;
  constexpr auto kAS = AccelClass::kAccelSlight;
  constexpr auto kSt = SteerClass::kStraight;
  constexpr auto kSL = SteerClass::kSlightLeft;
  constexpr auto kSR = SteerClass::kSlightRight;
  constexpr auto kL = SteerClass::kLeft;
  constexpr auto kR = SteerClass::kRight;

  std::vector<Blueprint> out;
  const auto add = [&out](
                     std::string id, Split split, ScenarioType type, double speed,
                     ActionPair first, ActionPair last, std::string instruction,
                     bool video = false) {
    out.push_back(
      {std::move(id), split, type, speed, {first, last}, std::move(instruction), video});
  };

  const auto sel = ScenarioType::kSpecificallySelected;
  add("test_selected_01", Split::kTest, sel, 15.0, {kM, kSR}, {kM, kSt},
      "change into the right lane and hold your speed");
  add("test_selected_02", Split::kTest, sel, 13.0, {kAS, kSt}, {kM, kSt},
      "keep up with the flow of traffic");
  add("test_selected_03", Split::kTest, sel, 17.0, {kM, kSL}, {kM, kSt},
      "move to the left lane when it is clear");

  const auto rain = ScenarioType::kHeavyRain;
  add("test_heavy_rain_01", Split::kTest, rain, 12.0, {kDS, kSt}, {kM, kSt},
      "slow down and keep extra distance in the rain");
  add("test_heavy_rain_02", Split::kTest, rain, 14.0, {kDS, kSt}, {kDS, kSt},
      "reduce speed steadily on the wet road");
  add("test_heavy_rain_03", Split::kTest, rain, 11.0, {kM, kSt}, {kDS, kSt},
      "hold your lane and ease off before the curve");

  const auto cone = ScenarioType::kConstructionZone;
  add("test_construction_01", Split::kTest, cone, 8.0, {kM, kSL}, {kM, kSR},
      "follow the temporary lane shift through the road works");
  add("test_construction_02", Split::kTest, cone, 7.0, {kDS, kSR}, {kM, kSL},
      "merge right past the cones and straighten out");
  add("test_construction_03", Split::kTest, cone, 9.0, {kDS, kSt}, {kM, kSR},
      "slow for the crew and keep to the open lane");

  const auto pass = ScenarioType::kOvertakeLaneChange;
  add("test_overtake_01", Split::kTest, pass, 25.0, {kAS, kSL}, {kM, kSR},
      "overtake the slower vehicle and return to your lane");
  add("test_overtake_02", Split::kTest, pass, 27.0, {kM, kSL}, {kAS, kSR},
      "move out, pass the truck, and merge back", true);
  add("test_overtake_03", Split::kTest, pass, 24.0, {kAS, kSt}, {kM, kSL},
      "close the gap and begin the overtake");

  const auto junction = ScenarioType::kIntersection;
  add("test_intersection_01", Split::kTest, junction, 10.0, {kM, kSt}, {kM, kSt},
      "go straight through the intersection");
  add("test_intersection_02", Split::kTest, junction, 9.0, {kDS, kL}, {kAS, kSt},
      "turn left at the intersection");
  add("test_intersection_03", Split::kTest, junction, 8.0, {kDS, kR}, {kAS, kSt},
      "turn right at the intersection");

  const auto night = ScenarioType::kNighttime;
  add("test_nighttime_01", Split::kTest, night, 14.0, {kM, kSt}, {kM, kSt},
      "continue along the road and mind your speed");
  add("test_nighttime_02", Split::kTest, night, 13.0, {kM, kSt}, {kDS, kSt},
      "drive on and slow slightly where the lights end", true);
  add("test_nighttime_03", Split::kTest, night, 15.0, {kDS, kSt}, {kM, kSt},
      "ease off a little and keep to your lane");

  const auto snow = ScenarioType::kSnowWintryMix;
  add("test_snow_01", Split::kTest, snow, 6.0, {kDS, kSt}, {kM, kSt},
      "keep your speed low on the packed snow");
  add("test_snow_02", Split::kTest, snow, 5.5, {kM, kSt}, {kM, kSt},
      "hold a steady crawl over the icy patch");
  add("test_snow_03", Split::kTest, snow, 7.0, {kDS, kSt}, {kDS, kSt},
      "brake gently and early on the snow");

  add("train_intersection_01", Split::kTrain, junction, 10.0, {kM, kSt}, {kM, kSt},
      "drive straight across the junction");
  add("train_heavy_rain_01", Split::kTrain, rain, 12.0, {kDS, kSt}, {kM, kSt},
      "back off the car ahead in the rain");
  add("train_overtake_01", Split::kTrain, pass, 25.0, {kAS, kSL}, {kM, kSR},
      "pass the slow car on its left");

  return out;
}

std::string sentence(SplitMix & rng, const std::string & phrase, const std::string & reason)
{
  static const std::vector<std::string> subjects = {"I'm going to ", "I will ", "I plan to "};
  return rng.pick(subjects) + phrase + " " + reason + ".";
}

ReasoningTrace make_trace(SplitMix & rng, ScenarioType type, const IntervalActions & actions)
{
  ReasoningTrace trace;
  trace.language = Language::kEn;
  trace.situational_awareness = situational_awareness(type);
  trace.accel_first_3s =
    sentence(rng, rng.pick(accel_phrases(actions.first_3s.accel)), rng.pick(accel_reasons()));
  trace.steer_first_3s =
    sentence(rng, rng.pick(steer_phrases(actions.first_3s.steer)), rng.pick(steer_reasons()));
  trace.accel_last_2s =
    sentence(rng, rng.pick(accel_phrases(actions.last_2s.accel)), rng.pick(accel_reasons()));
  trace.steer_last_2s =
    sentence(rng, rng.pick(steer_phrases(actions.last_2s.steer)), rng.pick(steer_reasons()));
  return trace;
}

ReasoningTrace spanish_trace()
{
  ReasoningTrace trace;
  trace.language = Language::kEs;
  trace.situational_awareness = "Intersección despejada, semáforo en verde.";
  trace.accel_first_3s = "Voy a mantener la velocidad actual para cruzar el cruce.";
  trace.steer_first_3s = "Voy a seguir recto para quedarme en mi carril.";
  trace.accel_last_2s = "Voy a mantener la velocidad actual.";
  trace.steer_last_2s = "Voy a seguir recto.";
  return trace;
}

ReasoningTrace chinese_trace()
{
  ReasoningTrace trace;
  trace.language = Language::kZh;
  trace.situational_awareness = "夜间道路空旷，视线良好。";
  trace.accel_first_3s = "我会保持当前速度。";
  trace.steer_first_3s = "我会保持直行。";
  trace.accel_last_2s = "我会保持当前速度。";
  trace.steer_last_2s = "我会保持直行。";
  return trace;
}

Scenario build_scenario(const Blueprint & blueprint, SplitMix & rng)
{
  const double jitter = 1.0 + 0.06 * (rng.uniform() - 0.5);
  const double speed = std::round(blueprint.base_speed * jitter * 100.0) / 100.0;

  const Trajectory past = straight_past(speed);
  const Trajectory expert = rollout(past, blueprint.actions);

  // Neglect drifts away from the commanded maneuver; the off-road swerve
  // goes the other way and harder.
  const bool steers_left = blueprint.actions.first_3s.steer == SteerClass::kLeft ||
                           blueprint.actions.first_3s.steer == SteerClass::kSlightLeft;
  const double neglect_curvature = steers_left ? -0.025 : 0.025;

  std::vector<LabeledReference> refs;
  refs.push_back({ReferenceCategory::kExpertLike, expert, "recorded"});
  refs.push_back(
    {ReferenceCategory::kWrongSpeed, retime_speed(expert, 0.8), "synthetic:retime:0.8"});
  refs.push_back(
    {ReferenceCategory::kWrongSpeed, retime_speed(expert, 1.2), "synthetic:retime:1.2"});
  refs.push_back(
    {ReferenceCategory::kNeglectInstruction, arc_future(speed, neglect_curvature),
     "synthetic:drift"});
  refs.push_back(
    {ReferenceCategory::kOffRoadNoCrash, arc_future(speed, -2.4 * neglect_curvature),
     "synthetic:swerve"});
  refs.push_back(
    {ReferenceCategory::kCrash, sudden_stop_future(speed, 2.4), "synthetic:stop"});

  std::vector<ReasoningTrace> traces = {make_trace(rng, blueprint.type, blueprint.actions)};
  if (blueprint.id == "test_intersection_01") traces.push_back(spanish_trace());
  if (blueprint.id == "test_nighttime_01") traces.push_back(chinese_trace());

  std::map<std::string, std::string> media;
  if (blueprint.video) {
    media["video"] = "media/" + blueprint.id + "/clip.mp4";
  } else {
    media["image"] = "media/" + blueprint.id + "/front.png";
  }

  return Scenario{
    blueprint.id, blueprint.split,          blueprint.type, blueprint.instruction,
    past,         ReferenceSet(std::move(refs)), std::move(traces),  std::move(media)};
}

[[noreturn]] void fail(const std::string & message)
{
  std::cerr << "fixture verification failed: " << message << "\n";
  std::exit(2);
}

// The generator refuses to emit fixtures the library itself would not
// certify: expert actions must classify back, self-plans must hit their
// category's exact ledger value, and trace phrases must survive both the
// prompt normalizer and the offline embedding classifier.
void verify_scenario(const Scenario & scenario, const IntervalActions & actions)
{
  const Trajectory & expert = scenario.expert();
  if (!(classify_intervals(expert) == actions)) {
    fail(scenario.id + ": expert rollout does not classify back to its actions");
  }

  const MmsResult self =
    score(expert, scenario.past, scenario.references, CheckpointPolicy::kCheckpoints);
  if (self.score != 10.0 || self.matched_category != ReferenceCategory::kExpertLike) {
    fail(scenario.id + ": expert self-score is not a clean 10");
  }

  struct Bucket
  {
    double lo;
    double hi;
  };
  const auto bucket = [](ReferenceCategory category) -> Bucket {
    switch (category) {
      case ReferenceCategory::kExpertLike: return {8.0, 10.0};
      case ReferenceCategory::kWrongSpeed: return {5.0, 7.0};
      case ReferenceCategory::kNeglectInstruction: return {2.0, 4.0};
      case ReferenceCategory::kOffRoadNoCrash: return {1.0, 1.0};
      case ReferenceCategory::kCrash: return {0.0, 0.0};
    }
    return {0.0, 0.0};
  };

  for (std::size_t i = 0; i < scenario.references.size(); ++i) {
    const LabeledReference & reference = scenario.references[i];
    const MmsResult result =
      score(reference.trajectory, scenario.past, scenario.references,
            CheckpointPolicy::kCheckpoints);
    if (result.matched_category != reference.category) {
      fail(
        scenario.id + ": reference " + std::to_string(i) + " (" +
        reference_category_name(reference.category) + ") matched " +
        (result.matched_category ? reference_category_name(*result.matched_category)
                                 : "nothing"));
    }
    const Bucket expected = bucket(reference.category);
    if (result.score < expected.lo || result.score > expected.hi) {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, " scored %.3f outside [%g, %g]", result.score,
                    expected.lo, expected.hi);
      fail(scenario.id + ": reference " + std::to_string(i) + buffer);
    }
    if (result.similarity_s < 0.9) {
      fail(scenario.id + ": reference " + std::to_string(i) + " self-similarity below 0.9");
    }
  }
}

// The corpus traces carry full sentences, not bare phrases; the sentence as
// a whole must still land on the intended class.
void verify_trace(const Scenario & scenario, const IntervalActions & actions)
{
  MockEmbeddingProvider provider;
  static const CentroidSet centroids =
    build_centroids(provider, builtin_phrases(), Language::kEn);
  const ReasoningTrace & trace = scenario.traces.front();

  const auto check_accel = [&](const std::string & text, AccelClass expected) {
    const auto got = rocchio_classify(provider.embed(text), centroids.accel);
    if (!std::holds_alternative<AccelClass>(got) || std::get<AccelClass>(got) != expected) {
      fail(scenario.id + ": trace sentence \"" + text + "\" misclassifies");
    }
  };
  const auto check_steer = [&](const std::string & text, SteerClass expected) {
    const auto got = rocchio_classify(provider.embed(text), centroids.steer);
    if (!std::holds_alternative<SteerClass>(got) || std::get<SteerClass>(got) != expected) {
      fail(scenario.id + ": trace sentence \"" + text + "\" misclassifies");
    }
  };
  check_accel(trace.accel_first_3s, actions.first_3s.accel);
  check_accel(trace.accel_last_2s, actions.last_2s.accel);
  check_steer(trace.steer_first_3s, actions.first_3s.steer);
  check_steer(trace.steer_last_2s, actions.last_2s.steer);
}

void verify_phrase_tables()
{
  MockEmbeddingProvider provider;
  const CentroidSet centroids = build_centroids(provider, builtin_phrases(), Language::kEn);

  for (int c = 0; c < 5; ++c) {
    const auto accel = static_cast<AccelClass>(c);
    for (const std::string & phrase : accel_phrases(accel)) {
      if (normalize_accel_command(phrase) != accel) {
        fail("phrase \"" + phrase + "\" does not normalize to its acceleration class");
      }
      const auto rocchio = rocchio_classify(provider.embed(phrase), centroids.accel);
      if (!std::holds_alternative<AccelClass>(rocchio) ||
          std::get<AccelClass>(rocchio) != accel) {
        fail("phrase \"" + phrase + "\" does not embed to its acceleration class");
      }
    }
    const auto steer = static_cast<SteerClass>(c);
    for (const std::string & phrase : steer_phrases(steer)) {
      if (normalize_steer_command(phrase) != steer) {
        fail("phrase \"" + phrase + "\" does not normalize to its steering class");
      }
      const auto rocchio = rocchio_classify(provider.embed(phrase), centroids.steer);
      if (!std::holds_alternative<SteerClass>(rocchio) ||
          std::get<SteerClass>(rocchio) != steer) {
        fail("phrase \"" + phrase + "\" does not embed to its steering class");
      }
    }
  }
}

// Every train scenario must work as an in-context example in every mode
// that takes examples, including the kinematic layout that re-derives
// command tags from the trace sentences.
void verify_examples(const std::vector<Scenario> & corpus)
{
  std::vector<FewShotExample> examples;
  for (const Scenario & scenario : corpus) {
    if (scenario.split != Split::kTrain) continue;
    examples.push_back(
      {scenario.id, scenario.media.begin()->second, scenario.past, scenario.instruction,
       scenario.traces.front(), scenario.expert()});
  }
  if (examples.size() != 3) fail("expected exactly 3 train scenarios");

  const Scenario & query = corpus.front();
  const PromptQuery prompt_query{
    query.media.begin()->second, MediaKind::kImage, query.past, query.instruction};
  for (const PromptMode mode :
       {PromptMode::kFewShot, PromptMode::kFewShotCot, PromptMode::kFewShotCotKinematic}) {
    (void)render_prompt(prompt_query, mode, examples);
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Fixture corpus generator"};
  std::string out;
  std::uint64_t seed = 2026;
  app.add_option("--out", out, "Output corpus directory")->required();
  app.add_option("--seed", seed, "Generation seed (same seed, same bytes)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return 1;
  }

  try {
    verify_phrase_tables();

    SplitMix rng(seed);
    std::vector<Scenario> corpus;
    std::vector<IntervalActions> actions;
    for (const Blueprint & blueprint : blueprints()) {
      corpus.push_back(build_scenario(blueprint, rng));
      actions.push_back(blueprint.actions);
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      verify_scenario(corpus[i], actions[i]);
      verify_trace(corpus[i], actions[i]);
    }
    verify_examples(corpus);

    save_corpus(corpus, out);
    std::size_t train = 0;
    for (const Scenario & scenario : corpus) {
      if (scenario.split == Split::kTrain) ++train;
    }
    std::cerr << "wrote " << corpus.size() << " scenarios to " << out << " ("
              << corpus.size() - train << " test, " << train
              << " train; examples: train_intersection_01 train_heavy_rain_01 "
                 "train_overtake_01)\n";
  } catch (const mms::Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
