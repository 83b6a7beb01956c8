// Copyright 2026 The Affect Engine Authors.
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

#include "affect/emotion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "affect/builtin_data.hpp"

namespace affect {

namespace {

struct EmotionInfo {
  Emotion emotion;
  std::string_view name;
  int group;
};

constexpr std::array<EmotionInfo, kEmotionCount> kEmotions = {{
    {Emotion::kGloating, "gloating", 1},
    {Emotion::kHope, "hope", 1},
    {Emotion::kSatisfaction, "satisfaction", 1},
    {Emotion::kRelief, "relief", 1},
    {Emotion::kPride, "pride", 1},
    {Emotion::kAdmiration, "admiration", 1},
    {Emotion::kLiking, "liking", 1},
    {Emotion::kGratitude, "gratitude", 1},
    {Emotion::kGratification, "gratification", 1},
    {Emotion::kLove, "love", 1},
    {Emotion::kShy, "shy", 1},
    {Emotion::kJoy, "joy", 2},
    {Emotion::kHappyFor, "happy_for", 2},
    {Emotion::kSorryFor, "sorry_for", 3},
    {Emotion::kShame, "shame", 3},
    {Emotion::kRemorse, "remorse", 3},
    {Emotion::kFearsConfirmed, "fears_confirmed", 4},
    {Emotion::kDisappointment, "disappointment", 4},
    {Emotion::kSadness, "sadness", 4},
    {Emotion::kDistress, "distress", 5},
    {Emotion::kPerplexity, "perplexity", 5},
    {Emotion::kDisliking, "disliking", 6},
    {Emotion::kHate, "hate", 6},
    {Emotion::kResentment, "resentment", 7},
    {Emotion::kReproach, "reproach", 7},
    {Emotion::kAnger, "anger", 7},
    {Emotion::kFear, "fear", 8},
    {Emotion::kSurprise, "surprise", 9},
}};

const EmotionInfo& info(Emotion e) {
  return kEmotions[static_cast<std::size_t>(e)];
}

}  // namespace

std::span<const Emotion> all_emotions() {
  static const std::array<Emotion, kEmotionCount> all = [] {
    std::array<Emotion, kEmotionCount> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = kEmotions[i].emotion;
    return a;
  }();
  return all;
}

std::string_view emotion_name(Emotion e) { return info(e).name; }

std::optional<Emotion> parse_emotion(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (key == "fear_confirmed") key = "fears_confirmed";
  for (const auto& e : kEmotions) {
    if (e.name == key) return e.emotion;
  }
  return std::nullopt;
}

Emotion emotion_from_name(std::string_view name) {
  if (auto e = parse_emotion(name)) return *e;
  throw Error(ErrorCode::kUnknownEmotion,
              "unknown emotion '" + std::string(name) + "'");
}

int group_of(Emotion e) { return info(e).group; }

int group_of(std::string_view name) { return group_of(emotion_from_name(name)); }

std::string_view to_string(Target v) {
  return v == Target::kSelf ? "Self" : "Other";
}

std::string_view to_string(OtherFortune v) {
  switch (v) {
    case OtherFortune::kGood: return "Good";
    case OtherFortune::kBad: return "Bad";
    default: return "None";
  }
}

std::string_view to_string(Temporal v) {
  switch (v) {
    case Temporal::kProspect: return "Prospect";
    case Temporal::kConfirmed: return "Confirmed";
    case Temporal::kDisconfirmed: return "Disconfirmed";
    default: return "None";
  }
}

std::string_view to_string(Agency v) {
  switch (v) {
    case Agency::kSelfAct: return "SelfAct";
    case Agency::kOtherAct: return "OtherAct";
    default: return "None";
  }
}

std::string_view to_string(Approval v) {
  switch (v) {
    case Approval::kApprove: return "Approve";
    case Approval::kDisapprove: return "Disapprove";
    default: return "None";
  }
}

bool DecisionRow::matches(const ElicitingContext& ctx) const {
  return (!target || *target == ctx.target) &&
         (!other_fortune || *other_fortune == ctx.other_fortune) &&
         (!temporal || *temporal == ctx.temporal) &&
         (!agency || *agency == ctx.agency) &&
         (!approval || *approval == ctx.approval);
}

DecisionTable::DecisionTable(std::vector<DecisionRow> rows)
    : rows_(std::move(rows)) {}

std::string_view DecisionTable::builtin_json() {
  return builtin_data::kDecisionTableJson;
}

const DecisionTable& DecisionTable::builtin() {
  static const DecisionTable table = from_json(builtin_json());
  return table;
}

namespace {

using nlohmann::json;

[[noreturn]] void table_error(const std::string& what) {
  throw Error(ErrorCode::kParse, "decision table: " + what);
}

template <typename Enum>
Enum parse_enum(const json& v, const std::string& field,
                std::initializer_list<Enum> values) {
  if (!v.is_string()) table_error("'" + field + "' must be a string");
  const auto text = v.get<std::string>();
  for (Enum e : values) {
    if (to_string(e) == text) return e;
  }
  table_error("bad value '" + text + "' for '" + field + "'");
}

std::vector<Emotion> parse_labels(const json& row, const char* key) {
  std::vector<Emotion> out;
  if (!row.contains(key)) return out;
  if (!row[key].is_array()) table_error(std::string(key) + " must be a list");
  for (const auto& item : row[key]) {
    if (!item.is_string()) table_error("labels must be strings");
    auto e = parse_emotion(item.get<std::string>());
    if (!e) {
      throw Error(ErrorCode::kUnknownEmotion,
                  "decision table: unknown emotion '" + item.get<std::string>() + "'");
    }
    out.push_back(*e);
  }
  return out;
}

}  // namespace

DecisionTable DecisionTable::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    table_error(e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    table_error("expected an object with a 'rows' list");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "rows") table_error("unknown field '" + key + "'");
  }
  std::vector<DecisionRow> rows;
  for (const auto& r : doc["rows"]) {
    if (!r.is_object()) table_error("row is not an object");
    for (const auto& [key, _] : r.items()) {
      if (key != "when" && key != "positive" && key != "negative") {
        table_error("unknown row field '" + key + "'");
      }
    }
    DecisionRow row;
    const json when = r.value("when", json::object());
    if (!when.is_object()) table_error("'when' must be an object");
    for (const auto& [key, v] : when.items()) {
      if (key == "target") {
        row.target = parse_enum(v, key, {Target::kSelf, Target::kOther});
      } else if (key == "other_fortune") {
        row.other_fortune = parse_enum(
            v, key,
            {OtherFortune::kNone, OtherFortune::kGood, OtherFortune::kBad});
      } else if (key == "temporal") {
        row.temporal = parse_enum(
            v, key,
            {Temporal::kNone, Temporal::kProspect, Temporal::kConfirmed,
             Temporal::kDisconfirmed});
      } else if (key == "agency") {
        row.agency = parse_enum(
            v, key, {Agency::kNone, Agency::kSelfAct, Agency::kOtherAct});
      } else if (key == "approval") {
        row.approval = parse_enum(
            v, key,
            {Approval::kNone, Approval::kApprove, Approval::kDisapprove});
      } else {
        table_error("unknown condition '" + key + "'");
      }
    }
    row.positive = parse_labels(r, "positive");
    row.negative = parse_labels(r, "negative");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) table_error("no rows");
  return DecisionTable(std::move(rows));
}

DecisionTable DecisionTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) table_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::vector<ElicitedEmotion> classify(double value,
                                      const ElicitingContext& ctx,
                                      const DecisionTable& table) {
  std::vector<ElicitedEmotion> out;
  if (value == 0.0) return out;
  const double strength = std::min(std::abs(value), 1.0);
  for (const auto& row : table.rows()) {
    if (!row.matches(ctx)) continue;
    for (Emotion e : value > 0 ? row.positive : row.negative) {
      out.push_back({e, strength});
    }
    break;
  }
  return out;
}

GroupStrengthVector group_strengths(std::span<const ElicitedEmotion> emotions) {
  GroupStrengthVector e = GroupStrengthVector::Zero();
  for (const auto& em : emotions) {
    const int k = group_of(em.emotion) - 1;
    e(k) = std::max(e(k), em.strength);
  }
  return e;
}

}  // namespace affect
