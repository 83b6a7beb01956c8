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

#include "affect/serialization.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

namespace affect {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

void only_fields(const Json& j, std::initializer_list<std::string_view> allowed,
                 std::string_view what) {
  if (!j.is_object()) bad(std::string(what) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      bad("unknown field '" + key + "' in " + std::string(what));
    }
  }
}

const Json& field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) {
    bad("missing '" + std::string(key) + "' in " + std::string(what));
  }
  return j.at(key);
}

double number(const Json& j, const char* key, std::string_view what) {
  const Json& v = field(j, key, what);
  if (!v.is_number()) bad("'" + std::string(key) + "' must be a number");
  return v.get<double>();
}

std::string string(const Json& j, const char* key, std::string_view what) {
  const Json& v = field(j, key, what);
  if (!v.is_string()) bad("'" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

bool boolean(const Json& j, const char* key, std::string_view what) {
  const Json& v = field(j, key, what);
  if (!v.is_boolean()) bad("'" + std::string(key) + "' must be a boolean");
  return v.get<bool>();
}

SlotRole role_from(const std::string& name) {
  auto r = parse_slot_role(name);
  if (!r) bad("unknown slot role '" + name + "'");
  return *r;
}

Sign sign_from(const std::string& s) {
  auto v = parse_sign(s);
  if (!v) bad("bad sign '" + s + "'");
  return *v;
}

MentalState state_from(const std::string& s) {
  auto v = parse_mental_state(s);
  if (!v) bad("unknown mental state '" + s + "'");
  return *v;
}

template <typename Enum>
Enum enum_from(const Json& j, const char* key,
               std::initializer_list<Enum> values) {
  if (!j.contains(key)) return *values.begin();
  if (!j[key].is_string()) bad("'" + std::string(key) + "' must be a string");
  const auto text = j[key].get<std::string>();
  for (Enum e : values) {
    if (to_string(e) == text) return e;
  }
  bad("bad value '" + text + "' for '" + std::string(key) + "'");
}

Octant octant_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Octant::kOnAxis); ++i) {
    if (octant_name(static_cast<Octant>(i)) == s) return static_cast<Octant>(i);
  }
  bad("unknown octant '" + s + "'");
}

LearningBranch branch_from(const std::string& s) {
  for (auto b : {LearningBranch::kUnknownMin, LearningBranch::kUnknownOther,
                 LearningBranch::kKnownMin, LearningBranch::kSkipped}) {
    if (branch_name(b) == s) return b;
  }
  bad("unknown branch '" + s + "'");
}

Json token_json(const Token& t) {
  return {{"y", t.y}, {"sign", sign_name(t.sign)}};
}

}  // namespace

Json to_json(const CaseFrame& cf) {
  Json slots = Json::object();
  for (const auto& [role, word] : cf.slots) {
    slots[std::string(slot_role_name(role))] = word;
  }
  return {{"type", cf.event_type}, {"slots", slots}};
}

CaseFrame case_frame_from_json(const Json& j) {
  only_fields(j, {"type", "slots"}, "case frame");
  CaseFrame cf;
  cf.event_type = string(j, "type", "case frame");
  const Json& slots = field(j, "slots", "case frame");
  if (!slots.is_object()) bad("'slots' must be an object");
  for (const auto& [key, v] : slots.items()) {
    const SlotRole role = role_from(key);
    if (!v.is_string()) bad("slot '" + key + "' must be a string");
    cf.slots[role] = v.get<std::string>();
  }
  return cf;
}

Json to_json(const ElicitingContext& ctx) {
  return {{"target", to_string(ctx.target)},
          {"other_fortune", to_string(ctx.other_fortune)},
          {"temporal", to_string(ctx.temporal)},
          {"agency", to_string(ctx.agency)},
          {"approval", to_string(ctx.approval)}};
}

ElicitingContext context_from_json(const Json& j) {
  only_fields(j, {"target", "other_fortune", "temporal", "agency", "approval"},
              "context");
  ElicitingContext ctx;
  ctx.target = enum_from(j, "target", {Target::kSelf, Target::kOther});
  ctx.other_fortune = enum_from(
      j, "other_fortune",
      {OtherFortune::kNone, OtherFortune::kGood, OtherFortune::kBad});
  ctx.temporal = enum_from(j, "temporal",
                           {Temporal::kNone, Temporal::kProspect,
                            Temporal::kConfirmed, Temporal::kDisconfirmed});
  ctx.agency = enum_from(j, "agency",
                         {Agency::kNone, Agency::kSelfAct, Agency::kOtherAct});
  ctx.approval = enum_from(
      j, "approval", {Approval::kNone, Approval::kApprove, Approval::kDisapprove});
  return ctx;
}

Json to_json(const FavoriteValue& fv) {
  return {{"value", fv.value}, {"known", fv.known}};
}

FavoriteValue favorite_value_from_json(const Json& j) {
  only_fields(j, {"value", "known"}, "favorite value");
  return {number(j, "value", "favorite value"),
          boolean(j, "known", "favorite value")};
}

Json to_json(const EmotionResult& r) {
  Json vectors = Json::array();
  for (const auto& v : r.vectors) {
    vectors.push_back({{"f", {v.f(0), v.f(1), v.f(2)}},
                       {"octant", octant_name(v.octant)},
                       {"magnitude", v.magnitude},
                       {"signed_value", v.signed_value}});
  }
  return {{"vectors", vectors},
          {"signed_value", r.signed_value},
          {"raw_magnitude", r.raw_magnitude}};
}

EmotionResult emotion_result_from_json(const Json& j) {
  only_fields(j, {"vectors", "signed_value", "raw_magnitude"}, "egc result");
  EmotionResult r;
  for (const auto& v : field(j, "vectors", "egc result")) {
    only_fields(v, {"f", "octant", "magnitude", "signed_value"}, "vector");
    EmotionVector ev;
    const Json& f = field(v, "f", "vector");
    if (!f.is_array() || f.size() != 3) bad("'f' must have 3 entries");
    ev.f = {f[0].get<double>(), f[1].get<double>(), f[2].get<double>()};
    ev.octant = octant_from(string(v, "octant", "vector"));
    ev.magnitude = number(v, "magnitude", "vector");
    ev.signed_value = number(v, "signed_value", "vector");
    r.vectors.push_back(ev);
  }
  r.signed_value = number(j, "signed_value", "egc result");
  r.raw_magnitude = number(j, "raw_magnitude", "egc result");
  return r;
}

Json to_json(const LearningReport& r) {
  Json tokens = Json::object();
  for (const auto& [role, t] : r.tokens) {
    tokens[std::string(slot_role_name(role))] = token_json(t);
  }
  Json changes = Json::array();
  for (const auto& c : r.changes) {
    changes.push_back({{"word", c.word},
                       {"role", slot_role_name(c.role)},
                       {"before", to_json(c.before)},
                       {"after", to_json(c.after)},
                       {"delta", c.delta}});
  }
  return {{"rule", r.rule_id},
          {"branch", branch_name(r.branch)},
          {"skip_reason", r.skip_reason},
          {"mu", r.mu},
          {"lambda", r.lambda},
          {"y_k", r.y_k},
          {"ev", r.ev},
          {"sign", sign_name(r.ev_sign)},
          {"min_role", r.min_role ? Json(slot_role_name(*r.min_role)) : Json()},
          {"tokens", tokens},
          {"changes", changes}};
}

LearningReport learning_report_from_json(const Json& j) {
  constexpr std::string_view what = "learning report";
  only_fields(j, {"rule", "branch", "skip_reason", "mu", "lambda", "y_k", "ev",
                  "sign", "min_role", "tokens", "changes"},
              what);
  LearningReport r;
  r.rule_id = string(j, "rule", what);
  r.branch = branch_from(string(j, "branch", what));
  r.skip_reason = string(j, "skip_reason", what);
  r.mu = number(j, "mu", what);
  r.lambda = number(j, "lambda", what);
  r.y_k = number(j, "y_k", what);
  r.ev = number(j, "ev", what);
  r.ev_sign = sign_from(string(j, "sign", what));
  if (const Json& m = field(j, "min_role", what); !m.is_null()) {
    r.min_role = role_from(m.get<std::string>());
  }
  for (const auto& [key, t] : field(j, "tokens", what).items()) {
    only_fields(t, {"y", "sign"}, "token");
    r.tokens[role_from(key)] = {number(t, "y", "token"),
                                sign_from(string(t, "sign", "token"))};
  }
  for (const auto& c : field(j, "changes", what)) {
    only_fields(c, {"word", "role", "before", "after", "delta"}, "change");
    r.changes.push_back({string(c, "word", "change"),
                         role_from(string(c, "role", "change")),
                         favorite_value_from_json(field(c, "before", "change")),
                         favorite_value_from_json(field(c, "after", "change")),
                         number(c, "delta", "change")});
  }
  return r;
}

Json to_json(const Feedback& f) {
  return {{"ev", f.ev}, {"sign", sign_name(f.sign)}};
}

Feedback feedback_from_json(const Json& j) {
  only_fields(j, {"ev", "sign"}, "feedback");
  Feedback f;
  f.ev = number(j, "ev", "feedback");
  if (!(f.ev >= 0.0 && f.ev <= 1.0)) bad("'ev' must lie in [0, 1]");
  if (j.contains("sign")) f.sign = sign_from(string(j, "sign", "feedback"));
  return f;
}

Json to_json(const TurnRecord& t) {
  Json slots = Json::object();
  for (const auto& [role, s] : t.slots) {
    slots[std::string(slot_role_name(role))] = {
        {"word", s.word}, {"value", s.fv.value}, {"known", s.fv.known}};
  }
  Json emotions = Json::array();
  for (const auto& e : t.emotions) {
    emotions.push_back(
        {{"emotion", emotion_name(e.emotion)}, {"strength", e.strength}});
  }
  Json e = Json::array();
  for (int k = 0; k < kEmotionGroupCount; ++k) e.push_back(t.e(k));
  Json mstn = {{"group", t.selection.group ? Json(*t.selection.group) : Json()},
               {"from", mental_state_name(t.selection.from)},
               {"to", mental_state_name(t.selection.to)},
               {"cost", t.selection.cost},
               {"decayed", t.selection.decayed}};
  return {{"turn", t.index},
          {"dry_run", t.dry_run},
          {"event", to_json(t.event)},
          {"context", to_json(t.context)},
          {"fvs", slots},
          {"egc", to_json(t.egc)},
          {"emotions", emotions},
          {"e", e},
          {"mstn", mstn},
          {"feedback", t.feedback ? to_json(*t.feedback) : Json()},
          {"learning", t.learning ? to_json(*t.learning) : Json()}};
}

TurnRecord turn_record_from_json(const Json& j) {
  constexpr std::string_view what = "turn record";
  only_fields(j, {"turn", "dry_run", "event", "context", "fvs", "egc",
                  "emotions", "e", "mstn", "feedback", "learning"},
              what);
  TurnRecord t;
  const Json& idx = field(j, "turn", what);
  if (!idx.is_number_unsigned()) bad("'turn' must be a nonnegative integer");
  t.index = idx.get<std::size_t>();
  t.dry_run = boolean(j, "dry_run", what);
  t.event = case_frame_from_json(field(j, "event", what));
  t.context = context_from_json(field(j, "context", what));
  for (const auto& [key, s] : field(j, "fvs", what).items()) {
    only_fields(s, {"word", "value", "known"}, "resolved slot");
    t.slots[role_from(key)] = {
        string(s, "word", "resolved slot"),
        {number(s, "value", "resolved slot"), boolean(s, "known", "resolved slot")}};
  }
  t.egc = emotion_result_from_json(field(j, "egc", what));
  for (const auto& e : field(j, "emotions", what)) {
    only_fields(e, {"emotion", "strength"}, "emotion");
    auto em = parse_emotion(string(e, "emotion", "emotion"));
    if (!em) bad("unknown emotion in trace");
    t.emotions.push_back({*em, number(e, "strength", "emotion")});
  }
  const Json& e = field(j, "e", what);
  if (!e.is_array() || e.size() != kEmotionGroupCount) {
    bad("'e' must have 9 entries");
  }
  for (int k = 0; k < kEmotionGroupCount; ++k) t.e(k) = e[k].get<double>();
  const Json& m = field(j, "mstn", what);
  only_fields(m, {"group", "from", "to", "cost", "decayed"}, "mstn");
  if (const Json& g = field(m, "group", "mstn"); !g.is_null()) {
    t.selection.group = g.get<int>();
  }
  t.selection.from = state_from(string(m, "from", "mstn"));
  t.selection.to = state_from(string(m, "to", "mstn"));
  t.selection.cost = number(m, "cost", "mstn");
  t.selection.decayed = boolean(m, "decayed", "mstn");
  if (const Json& f = field(j, "feedback", what); !f.is_null()) {
    t.feedback = feedback_from_json(f);
  }
  if (const Json& l = field(j, "learning", what); !l.is_null()) {
    t.learning = learning_report_from_json(l);
  }
  return t;
}

Json to_json(const ScriptTurn& t) {
  Json j = {{"event", to_json(t.event)}, {"context", to_json(t.context)}};
  if (t.feedback) j["feedback"] = to_json(*t.feedback);
  return j;
}

ScriptTurn script_turn_from_json(const Json& j) {
  only_fields(j, {"event", "context", "feedback"}, "script turn");
  ScriptTurn t;
  t.event = case_frame_from_json(field(j, "event", "script turn"));
  if (j.contains("context")) t.context = context_from_json(j["context"]);
  if (j.contains("feedback") && !j["feedback"].is_null()) {
    t.feedback = feedback_from_json(j["feedback"]);
  }
  return t;
}

}  // namespace affect
