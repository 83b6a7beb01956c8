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

#include "affect/session.hpp"

#include <istream>
#include <ostream>

#include "affect/serialization.hpp"

namespace affect {

Session::Session(std::string id, std::string persona, FavoriteValueDB db,
                 EngineConfig config)
    : id_(std::move(id)),
      persona_(std::move(persona)),
      initial_db_(db),
      db_(std::move(db)),
      config_(std::move(config)),
      mstn_(TransitionModel::from_probabilities(config_.transition_table,
                                                config_.pseudo_count)) {
  config_.learning.validate();
}

TurnRecord Session::evaluate(const CaseFrame& event,
                             const ElicitingContext& context,
                             TransitionModel& model) const {
  TurnRecord rec;
  rec.index = turns_.size();
  rec.event = event;
  rec.context = context;
  rec.egc = egc_eval(event, db_, persona_, config_.egc);
  rec.slots = resolve_slots(event, db_, persona_);
  rec.emotions = classify(rec.egc.signed_value, context, config_.decisions);
  rec.e = group_strengths(rec.emotions);
  rec.selection =
      select_emotion_and_next(model, rec.e, config_.learning.group_map);
  return rec;
}

const TurnRecord& Session::submit_event(const CaseFrame& event,
                                        const ElicitingContext& context) {
  TransitionModel model = mstn_;
  TurnRecord rec = evaluate(event, context, model);
  mstn_ = model;
  turns_.push_back(std::move(rec));
  return turns_.back();
}

TurnRecord Session::preview_event(const CaseFrame& event,
                                  const ElicitingContext& context) const {
  TransitionModel scratch = mstn_;
  TurnRecord rec = evaluate(event, context, scratch);
  rec.dry_run = true;
  return rec;
}

const LearningReport& Session::submit_feedback(const Feedback& feedback) {
  if (turns_.empty()) {
    throw Error(ErrorCode::kFeedbackWithoutEvent, "no event to learn from");
  }
  TurnRecord& turn = turns_.back();
  if (turn.feedback) {
    throw Error(ErrorCode::kFeedbackWithoutEvent,
                "turn " + std::to_string(turn.index) + " already has feedback");
  }
  FeedbackSample sample;
  sample.cf = turn.event;
  sample.ev = feedback.ev;
  sample.sign = feedback.sign;
  sample.mood = mstn_.current();
  sample.dominant_group = turn.selection.group;
  FavoriteValueDB db = db_;
  LearningReport report = learn_from_turn(sample, db, persona_, mstn_,
                                          config_.learning, config_.rules);
  db_ = std::move(db);
  turn.feedback = feedback;
  turn.learning = std::move(report);
  return *turn.learning;
}

void Session::run(const ScriptTurn& turn) {
  submit_event(turn.event, turn.context);
  if (turn.feedback) submit_feedback(*turn.feedback);
}

Session replay(const std::string& id, const std::string& persona,
               const FavoriteValueDB& db, const EngineConfig& config,
               const std::vector<ScriptTurn>& script) {
  Session session(id, persona, db, config);
  for (std::size_t i = 0; i < script.size(); ++i) {
    try {
      session.run(script[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "turn " + std::to_string(i) + ": " + e.what());
    }
  }
  return session;
}

std::vector<ScriptTurn> inputs_of(const std::vector<TurnRecord>& turns) {
  std::vector<ScriptTurn> out;
  for (const auto& t : turns) out.push_back({t.event, t.context, t.feedback});
  return out;
}

namespace {

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream& in, std::string_view what,
                          Parse parse) {
  std::vector<T> out;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse(Json::parse(text)));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kParse, std::string(what) + " line " +
                                         std::to_string(line_no) + ": " +
                                         e.what());
    } catch (const Error& e) {
      throw Error(e.code(), std::string(what) + " line " +
                                std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<ScriptTurn> read_script(std::istream& in) {
  return read_lines<ScriptTurn>(in, "script", [](const Json& j) {
    ScriptTurn t = script_turn_from_json(j);
    require_valid(t.event);
    return t;
  });
}

std::vector<CaseFrame> read_case_frames(std::istream& in) {
  return read_lines<CaseFrame>(in, "case frames", [](const Json& j) {
    CaseFrame cf = case_frame_from_json(j);
    require_valid(cf);
    return cf;
  });
}

void write_trace(std::ostream& out, const std::vector<TurnRecord>& turns) {
  for (const auto& t : turns) out << to_json(t).dump() << '\n';
}

std::vector<TurnRecord> read_trace(std::istream& in) {
  return read_lines<TurnRecord>(in, "trace", turn_record_from_json);
}

}  // namespace affect
