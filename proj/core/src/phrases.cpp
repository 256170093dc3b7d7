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

#include "mms/coherence.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace mms
{

const char * language_name(Language language)
{
  switch (language) {
    case Language::kEn: return "en";
    case Language::kEs: return "es";
    case Language::kZh: return "zh";
  }
  return "unknown";
}

std::optional<Language> language_from_name(const std::string & name)
{
  if (name == "en") return Language::kEn;
  if (name == "es") return Language::kEs;
  if (name == "zh") return Language::kZh;
  return std::nullopt;
}

namespace
{

struct RawPhrase
{
  const char * class_name;
  const char * language;
  const char * phrase;
};

// Kept in sync with data/action_phrases.tsv; a unit test compares the two.
constexpr RawPhrase kPhraseTable[] = {
  {"decelerate_strongly", "en", "brake hard"},
  {"decelerate_strongly", "en", "slow down sharply"},
  {"decelerate_strongly", "en", "decelerate strongly"},
  {"decelerate_strongly", "en", "heavy braking"},
  {"decelerate_slightly", "en", "slow down a little"},
  {"decelerate_slightly", "en", "ease off the accelerator"},
  {"decelerate_slightly", "en", "decelerate gently"},
  {"decelerate_slightly", "en", "reduce speed slightly"},
  {"maintain_speed", "en", "maintain the current speed"},
  {"maintain_speed", "en", "keep my speed"},
  {"maintain_speed", "en", "hold this speed"},
  {"maintain_speed", "en", "keeping the current speed"},
  {"maintain_speed", "en", "maintaining my speed"},
  {"maintain_speed", "en", "keep the current speed"},
  {"accelerate_slightly", "en", "speed up a little"},
  {"accelerate_slightly", "en", "accelerate gently"},
  {"accelerate_slightly", "en", "increase speed slightly"},
  {"accelerate_slightly", "en", "gradually gain speed"},
  {"accelerate_strongly", "en", "accelerate hard"},
  {"accelerate_strongly", "en", "speed up quickly"},
  {"accelerate_strongly", "en", "floor the accelerator"},
  {"accelerate_strongly", "en", "strong acceleration"},
  {"turn_left", "en", "turn left"},
  {"turn_left", "en", "make a left turn"},
  {"turn_left", "en", "steer hard to the left"},
  {"turn_left", "en", "take the left turn"},
  {"turn_slightly_left", "en", "steer slightly to the left"},
  {"turn_slightly_left", "en", "slight left turn"},
  {"turn_slightly_left", "en", "drift gently left"},
  {"turn_slightly_left", "en", "steering slightly to the left"},
  {"turn_slightly_left", "en", "bear left"},
  {"steer_straight", "en", "keep steering straight"},
  {"steer_straight", "en", "go straight ahead"},
  {"steer_straight", "en", "continue straight"},
  {"steer_straight", "en", "hold the lane"},
  {"steer_straight", "en", "stay in my lane"},
  {"turn_slightly_right", "en", "steer slightly to the right"},
  {"turn_slightly_right", "en", "slight right turn"},
  {"turn_slightly_right", "en", "drift gently right"},
  {"turn_slightly_right", "en", "steering slightly to the right"},
  {"turn_slightly_right", "en", "bear right"},
  {"turn_right", "en", "turn right"},
  {"turn_right", "en", "make a right turn"},
  {"turn_right", "en", "steer hard to the right"},
  {"turn_right", "en", "take the right turn"},
  {"decelerate_strongly", "es", "frenar con fuerza"},
  {"decelerate_strongly", "es", "frenar bruscamente"},
  {"decelerate_strongly", "es", "reducir la velocidad de golpe"},
  {"decelerate_slightly", "es", "reducir un poco la velocidad"},
  {"decelerate_slightly", "es", "frenar suavemente"},
  {"decelerate_slightly", "es", "bajar la velocidad ligeramente"},
  {"maintain_speed", "es", "mantener la velocidad actual"},
  {"maintain_speed", "es", "mantener mi velocidad"},
  {"maintain_speed", "es", "conservar esta velocidad"},
  {"accelerate_slightly", "es", "acelerar un poco"},
  {"accelerate_slightly", "es", "aumentar la velocidad ligeramente"},
  {"accelerate_slightly", "es", "ganar algo de velocidad"},
  {"accelerate_strongly", "es", "acelerar con fuerza"},
  {"accelerate_strongly", "es", "acelerar a fondo"},
  {"accelerate_strongly", "es", "aumentar la velocidad rápidamente"},
  {"turn_left", "es", "girar a la izquierda"},
  {"turn_left", "es", "doblar a la izquierda"},
  {"turn_left", "es", "girar fuerte a la izquierda"},
  {"turn_slightly_left", "es", "girar ligeramente a la izquierda"},
  {"turn_slightly_left", "es", "desviarse un poco a la izquierda"},
  {"turn_slightly_left", "es", "torcer levemente a la izquierda"},
  {"steer_straight", "es", "seguir recto"},
  {"steer_straight", "es", "continuar en línea recta"},
  {"steer_straight", "es", "mantener el rumbo recto"},
  {"turn_slightly_right", "es", "girar ligeramente a la derecha"},
  {"turn_slightly_right", "es", "desviarse un poco a la derecha"},
  {"turn_slightly_right", "es", "torcer levemente a la derecha"},
  {"turn_right", "es", "girar a la derecha"},
  {"turn_right", "es", "doblar a la derecha"},
  {"turn_right", "es", "girar fuerte a la derecha"},
  {"decelerate_strongly", "zh", "急刹车"},
  {"decelerate_strongly", "zh", "用力刹车"},
  {"decelerate_strongly", "zh", "大幅减速"},
  {"decelerate_slightly", "zh", "稍微减速"},
  {"decelerate_slightly", "zh", "轻踩刹车"},
  {"decelerate_slightly", "zh", "缓慢减速"},
  {"maintain_speed", "zh", "保持当前速度"},
  {"maintain_speed", "zh", "保持车速"},
  {"maintain_speed", "zh", "维持现在的速度"},
  {"accelerate_slightly", "zh", "稍微加速"},
  {"accelerate_slightly", "zh", "轻踩油门"},
  {"accelerate_slightly", "zh", "缓慢提速"},
  {"accelerate_strongly", "zh", "用力加速"},
  {"accelerate_strongly", "zh", "猛踩油门"},
  {"accelerate_strongly", "zh", "快速提速"},
  {"turn_left", "zh", "向左转"},
  {"turn_left", "zh", "左转弯"},
  {"turn_left", "zh", "向左急转"},
  {"turn_slightly_left", "zh", "稍微向左"},
  {"turn_slightly_left", "zh", "略微左偏"},
  {"turn_slightly_left", "zh", "轻微向左转向"},
  {"steer_straight", "zh", "保持直行"},
  {"steer_straight", "zh", "直线行驶"},
  {"steer_straight", "zh", "沿直线继续行驶"},
  {"turn_slightly_right", "zh", "稍微向右"},
  {"turn_slightly_right", "zh", "略微右偏"},
  {"turn_slightly_right", "zh", "轻微向右转向"},
  {"turn_right", "zh", "向右转"},
  {"turn_right", "zh", "右转弯"},
  {"turn_right", "zh", "向右急转"},
};

PhraseEntry make_entry(
  const std::string & class_name, const std::string & language,
  const std::string & phrase, const std::string & where)
{
  const auto lang = language_from_name(language);
  if (!lang) {
    throw Error(ErrorCode::kMalformedRecord, where + ": unknown language " + language);
  }
  if (const auto accel = accel_class_from_name(class_name)) {
    return PhraseEntry{*accel, *lang, phrase};
  }
  if (const auto steer = steer_class_from_name(class_name)) {
    return PhraseEntry{*steer, *lang, phrase};
  }
  throw Error(ErrorCode::kMalformedRecord, where + ": unknown action class " + class_name);
}

}  // namespace

const std::vector<PhraseEntry> & builtin_phrases()
{
  static const std::vector<PhraseEntry> table = [] {
    std::vector<PhraseEntry> entries;
    entries.reserve(std::size(kPhraseTable));
    for (const auto & raw : kPhraseTable) {
      entries.push_back(make_entry(raw.class_name, raw.language, raw.phrase, "builtin"));
    }
    return entries;
  }();
  return table;
}

std::vector<PhraseEntry> load_phrase_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open phrase file " + path);
  }
  std::vector<PhraseEntry> entries;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const std::string where = path + ":" + std::to_string(line_number);
    const std::size_t first_tab = line.find('\t');
    const std::size_t second_tab =
      first_tab == std::string::npos ? std::string::npos : line.find('\t', first_tab + 1);
    if (second_tab == std::string::npos) {
      throw Error(ErrorCode::kMalformedRecord, where + ": expected class<TAB>language<TAB>phrase");
    }
    const std::string class_name = line.substr(0, first_tab);
    const std::string language = line.substr(first_tab + 1, second_tab - first_tab - 1);
    const std::string phrase = line.substr(second_tab + 1);
    if (phrase.empty()) {
      throw Error(ErrorCode::kMalformedRecord, where + ": empty phrase");
    }
    entries.push_back(make_entry(class_name, language, phrase, where));
  }
  return entries;
}

}  // namespace mms
