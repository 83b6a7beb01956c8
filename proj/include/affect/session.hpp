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

// A dialog session runs the full loop for each turn: evaluate the event,
// classify the emotion, move the mental state, and on feedback learn the
// favorite values of the event's words. The CLI and the HTTP service both
// drive sessions through this class.

#ifndef AFFECT_SESSION_HPP
#define AFFECT_SESSION_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "affect/core_model.hpp"
#include "affect/egc.hpp"
#include "affect/emotion.hpp"
#include "affect/fpn.hpp"
#include "affect/fv_learning.hpp"
#include "affect/mstn.hpp"

namespace affect {

struct EngineConfig {
  EgcConfig egc;
  LearningConfig learning;
  DecisionTable decisions = DecisionTable::builtin();
  RuleBase rules = RuleBase::builtin();
  ProbabilityTable transition_table = default_probability_table();
  double pseudo_count = kDefaultPseudoCount;
};

struct Feedback {
  double ev = 0.0;
  Sign sign = Sign::kPositive;

  friend bool operator==(const Feedback&, const Feedback&) = default;
};

struct TurnRecord {
  std::size_t index = 0;
  bool dry_run = false;
  CaseFrame event;
  ElicitingContext context;
  ResolvedSlots slots;
  EmotionResult egc;
  std::vector<ElicitedEmotion> emotions;
  GroupStrengthVector e = GroupStrengthVector::Zero();
  Selection selection;
  std::optional<Feedback> feedback;
  std::optional<LearningReport> learning;
};

// One line of a replay script.
struct ScriptTurn {
  CaseFrame event;
  ElicitingContext context;
  std::optional<Feedback> feedback;
};

class Session {
 public:
  Session(std::string id, std::string persona, FavoriteValueDB db,
          EngineConfig config);

  const std::string& id() const { return id_; }
  const std::string& persona() const { return persona_; }
  const FavoriteValueDB& db() const { return db_; }
  const FavoriteValueDB& initial_db() const { return initial_db_; }
  const TransitionModel& mstn() const { return mstn_; }
  const EngineConfig& config() const { return config_; }
  const std::vector<TurnRecord>& turns() const { return turns_; }

  // Commits the turn. Throws on an invalid case frame.
  const TurnRecord& submit_event(const CaseFrame& event,
                                 const ElicitingContext& context = {});

  // Same evaluation without touching the mental state or the log.
  TurnRecord preview_event(const CaseFrame& event,
                           const ElicitingContext& context = {}) const;

  // Learns from feedback on the latest turn. Throws kFeedbackWithoutEvent
  // when there is no turn or it already has feedback.
  const LearningReport& submit_feedback(const Feedback& feedback);

  void run(const ScriptTurn& turn);

 private:
  TurnRecord evaluate(const CaseFrame& event, const ElicitingContext& context,
                      TransitionModel& model) const;

  std::string id_;
  std::string persona_;
  FavoriteValueDB initial_db_;
  FavoriteValueDB db_;
  EngineConfig config_;
  TransitionModel mstn_;
  std::vector<TurnRecord> turns_;
};

// Replays the inputs of a turn log on a fresh session.
Session replay(const std::string& id, const std::string& persona,
               const FavoriteValueDB& db, const EngineConfig& config,
               const std::vector<ScriptTurn>& script);

std::vector<ScriptTurn> inputs_of(const std::vector<TurnRecord>& turns);

// Script files: one JSON object per line,
//   {"event": {"type": "V(S,O)", "slots": {...}},
//    "context": {...}, "feedback": {"ev": 0.6, "sign": "+"}}
// with "context" and "feedback" optional. Errors name the line.
std::vector<ScriptTurn> read_script(std::istream& in);

// Case-frame files: one {"type": ..., "slots": {...}} per line.
std::vector<CaseFrame> read_case_frames(std::istream& in);

// One serialized TurnRecord per line.
void write_trace(std::ostream& out, const std::vector<TurnRecord>& turns);
std::vector<TurnRecord> read_trace(std::istream& in);

}  // namespace affect

#endif  // AFFECT_SESSION_HPP
