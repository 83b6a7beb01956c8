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

#include "affect/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace affect {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingSlot: return "MissingSlot";
    case ErrorCode::kUnexpectedSlot: return "UnexpectedSlot";
    case ErrorCode::kUnknownEventType: return "UnknownEventType";
    case ErrorCode::kUnknownEmotion: return "UnknownEmotion";
    case ErrorCode::kRowSumOutOfTolerance: return "RowSumOutOfTolerance";
    case ErrorCode::kNegativeProbability: return "NegativeProbability";
    case ErrorCode::kProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::kInvalidPseudoCount: return "InvalidPseudoCount";
    case ErrorCode::kDuplicateProposition: return "DuplicateProposition";
    case ErrorCode::kType4Rejected: return "Type4Rejected";
    case ErrorCode::kMalformedRule: return "MalformedRule";
    case ErrorCode::kNotEnabled: return "NotEnabled";
    case ErrorCode::kCyclicNet: return "CyclicNet";
    case ErrorCode::kUnknownGoal: return "UnknownGoal";
    case ErrorCode::kNoMatchingRule: return "NoMatchingRule";
    case ErrorCode::kZeroMu: return "ZeroMu";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kFeedbackWithoutEvent: return "FeedbackWithoutEvent";
    case ErrorCode::kUnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

double clamp_favorite(double v) { return std::clamp(v, -1.0, 1.0); }

std::string normalize_word(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

namespace {

FavoriteValue sanitize(FavoriteValue fv) {
  if (!std::isfinite(fv.value)) {
    throw Error(ErrorCode::kInvalidConfig, "favorite value is not finite");
  }
  fv.value = clamp_favorite(fv.value);
  return fv;
}

FavoriteValue materialize(const FavoriteValue& fv) {
  return fv.known ? fv : FavoriteValue::unknown();
}

}  // namespace

FavoriteValue FavoriteValueDB::lookup(std::string_view person,
                                      std::string_view word) const {
  std::string key = normalize_word(word);
  if (auto it = personal_.find({std::string(person), key});
      it != personal_.end()) {
    return materialize(it->second);
  }
  if (auto it = initial_.find(key); it != initial_.end()) {
    return materialize(it->second);
  }
  return FavoriteValue::unknown();
}

void FavoriteValueDB::set_initial(std::string_view word, FavoriteValue fv) {
  initial_[normalize_word(word)] = sanitize(fv);
}

void FavoriteValueDB::set_personal(std::string_view person,
                                   std::string_view word, FavoriteValue fv) {
  personal_[{std::string(person), normalize_word(word)}] = sanitize(fv);
}

namespace {

using nlohmann::json;

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse,
              "fv db line " + std::to_string(line) + ": " + what);
}

}  // namespace

FavoriteValueDB read_fv_db(std::istream& in) {
  FavoriteValueDB db;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      fail_line(line_no, e.what());
    }
    if (!rec.is_object()) fail_line(line_no, "record is not an object");
    for (const auto& [key, _] : rec.items()) {
      if (key != "word" && key != "value" && key != "known" &&
          key != "layer" && key != "person") {
        fail_line(line_no, "unknown field '" + key + "'");
      }
    }
    if (!rec.contains("word") || !rec["word"].is_string() ||
        rec["word"].get<std::string>().empty()) {
      fail_line(line_no, "missing or empty 'word'");
    }
    if (!rec.contains("value") || !rec["value"].is_number()) {
      fail_line(line_no, "missing numeric 'value'");
    }
    if (!rec.contains("known") || !rec["known"].is_boolean()) {
      fail_line(line_no, "missing boolean 'known'");
    }
    if (!rec.contains("layer") || !rec["layer"].is_string()) {
      fail_line(line_no, "missing 'layer'");
    }
    FavoriteValue fv{rec["value"].get<double>(), rec["known"].get<bool>()};
    if (!(fv.value >= -1.0 && fv.value <= 1.0)) {
      fail_line(line_no, "value outside [-1, 1]");
    }
    const auto layer = rec["layer"].get<std::string>();
    const auto word = rec["word"].get<std::string>();
    if (layer == "initial") {
      if (rec.contains("person")) {
        fail_line(line_no, "'person' not allowed on initial layer");
      }
      db.set_initial(word, fv);
    } else if (layer == "personal") {
      if (!rec.contains("person") || !rec["person"].is_string()) {
        fail_line(line_no, "personal record needs 'person'");
      }
      db.set_personal(rec["person"].get<std::string>(), word, fv);
    } else {
      fail_line(line_no, "unknown layer '" + layer + "'");
    }
  }
  return db;
}

void write_fv_db(std::ostream& out, const FavoriteValueDB& db) {
  for (const auto& [word, fv] : db.initial()) {
    json rec = {{"word", word},
                {"value", fv.value},
                {"known", fv.known},
                {"layer", "initial"}};
    out << rec.dump() << '\n';
  }
  for (const auto& [key, fv] : db.personal()) {
    json rec = {{"word", key.second},
                {"value", fv.value},
                {"known", fv.known},
                {"layer", "personal"},
                {"person", key.first}};
    out << rec.dump() << '\n';
  }
}

FavoriteValueDB load_fv_db(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open fv db '" + path + "'");
  return read_fv_db(in);
}

void save_fv_db(const std::string& path, const FavoriteValueDB& db) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kParse, "cannot write fv db '" + path + "'");
  write_fv_db(out, db);
}

// ---------------------------------------------------------------------------
// Case frames

std::string_view slot_role_name(SlotRole role) {
  switch (role) {
    case SlotRole::S: return "S";
    case SlotRole::O: return "O";
    case SlotRole::OF: return "OF";
    case SlotRole::OT: return "OT";
    case SlotRole::OM: return "OM";
    case SlotRole::OS: return "OS";
    case SlotRole::OC: return "OC";
    case SlotRole::I: return "I";
    case SlotRole::C: return "C";
    case SlotRole::P: return "P";
  }
  return "?";
}

std::optional<SlotRole> parse_slot_role(std::string_view name) {
  for (SlotRole r : kAllSlotRoles) {
    if (slot_role_name(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

using R = SlotRole;

struct EventRow {
  EventType type;
  std::string_view name;
  PredicateKind kind;
  std::vector<SlotRole> required;
};

const std::vector<EventRow>& event_rows() {
  static const std::vector<EventRow> rows = {
      {EventType::V_S, "V(S)", PredicateKind::kVerb, {R::S, R::P}},
      {EventType::A_S_C, "A(S,C)", PredicateKind::kAdjective,
       {R::S, R::C, R::P}},
      {EventType::A_S_OF_C, "A(S,OF,C)", PredicateKind::kAdjective,
       {R::S, R::OF, R::C, R::P}},
      {EventType::A_S_OT_C, "A(S,OT,C)", PredicateKind::kAdjective,
       {R::S, R::OT, R::C, R::P}},
      {EventType::A_S_OM_C, "A(S,OM,C)", PredicateKind::kAdjective,
       {R::S, R::OM, R::C, R::P}},
      {EventType::A_S_OS_C, "A(S,OS,C)", PredicateKind::kAdjective,
       {R::S, R::OS, R::C, R::P}},
      {EventType::V_S_OF, "V(S,OF)", PredicateKind::kVerb,
       {R::S, R::OF, R::P}},
      {EventType::V_S_OT, "V(S,OT)", PredicateKind::kVerb,
       {R::S, R::OT, R::P}},
      {EventType::V_S_OM, "V(S,OM)", PredicateKind::kVerb,
       {R::S, R::OM, R::P}},
      {EventType::V_S_OS, "V(S,OS)", PredicateKind::kVerb,
       {R::S, R::OS, R::P}},
      {EventType::V_S_O, "V(S,O)", PredicateKind::kVerb, {R::S, R::O, R::P}},
      {EventType::V_S_O_OF, "V(S,O,OF)", PredicateKind::kVerb,
       {R::S, R::O, R::OF, R::P}},
      {EventType::V_S_O_OT, "V(S,O,OT)", PredicateKind::kVerb,
       {R::S, R::O, R::OT, R::P}},
      {EventType::V_S_O_OM, "V(S,O,OM)", PredicateKind::kVerb,
       {R::S, R::O, R::OM, R::P}},
      {EventType::V_S_O_I, "V(S,O,I)", PredicateKind::kVerb,
       {R::S, R::O, R::I, R::P}},
      {EventType::V_S_O_OC, "V(S,O,OC)", PredicateKind::kVerb,
       {R::S, R::O, R::OC, R::P}},
      {EventType::A_S_O_C, "A(S,O,C)", PredicateKind::kAdjective,
       {R::S, R::O, R::C, R::P}},
  };
  return rows;
}

const EventRow& row_of(EventType type) {
  return event_rows()[static_cast<std::size_t>(type)];
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

std::span<const EventType> all_event_types() {
  static const std::array<EventType, kEventTypeCount> types = [] {
    std::array<EventType, kEventTypeCount> a{};
    for (int i = 0; i < kEventTypeCount; ++i) a[i] = static_cast<EventType>(i);
    return a;
  }();
  return types;
}

std::string_view event_type_name(EventType type) { return row_of(type).name; }

std::optional<EventType> parse_event_type(std::string_view name) {
  const std::string compact = strip_spaces(name);
  for (const auto& row : event_rows()) {
    if (row.name == compact) return row.type;
  }
  return std::nullopt;
}

PredicateKind predicate_kind(EventType type) { return row_of(type).kind; }

std::span<const SlotRole> required_slots(EventType type) {
  return row_of(type).required;
}

std::string CaseFrameIssue::message() const {
  std::string msg(error_code_name(code));
  if (role) {
    msg += "(";
    msg += slot_role_name(*role);
    msg += ")";
  }
  return msg;
}

std::optional<CaseFrameIssue> validate_case_frame(const CaseFrame& cf) {
  const auto type = parse_event_type(cf.event_type);
  if (!type) return CaseFrameIssue{ErrorCode::kUnknownEventType, std::nullopt};
  const auto required = required_slots(*type);
  for (SlotRole role : required) {
    auto it = cf.slots.find(role);
    if (it == cf.slots.end() || it->second.empty()) {
      return CaseFrameIssue{ErrorCode::kMissingSlot, role};
    }
  }
  for (const auto& [role, _] : cf.slots) {
    if (std::find(required.begin(), required.end(), role) == required.end()) {
      return CaseFrameIssue{ErrorCode::kUnexpectedSlot, role};
    }
  }
  return std::nullopt;
}

EventType require_valid(const CaseFrame& cf) {
  if (auto issue = validate_case_frame(cf)) {
    throw Error(issue->code, issue->message() + " in case frame '" +
                                 cf.event_type + "'");
  }
  return *parse_event_type(cf.event_type);
}

}  // namespace affect
