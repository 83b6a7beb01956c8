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

// Favorite-value learning by backward calculation through the fuzzy rule
// that matches an event.
//
// Antecedent words become tokens y = |FV| with the sign kept aside (unknown
// words read as 0.5). The rule output is y_k = min(y) * mu. Given the user's
// emotion value EV, one of three updates applies:
//
//   min place unknown            dFV = (EV - y_k) / mu          on the min word
//   min known, others unknown    dFV = (EV - y_u * mu) / mu     on each unknown u
//   all known                    dFV = (EV - y_k) / mu          on the min word,
//                                skipped when two antecedents are negative
//
// and FV <- FV + eta * dFV in token space, clamped to [0, 1], with the sign
// flipping if the token crosses zero.

#ifndef AFFECT_FV_LEARNING_HPP
#define AFFECT_FV_LEARNING_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affect/core_model.hpp"
#include "affect/egc.hpp"
#include "affect/fpn.hpp"
#include "affect/mstn.hpp"

namespace affect {

enum class Sign { kPositive, kNegative };

inline double sign_factor(Sign s) { return s == Sign::kPositive ? 1.0 : -1.0; }
inline Sign flip(Sign s) {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}
std::string_view sign_name(Sign s);  // "+" or "-"
std::optional<Sign> parse_sign(std::string_view s);

struct Token {
  double y = 0.0;
  Sign sign = Sign::kPositive;

  friend bool operator==(const Token&, const Token&) = default;
};

Token tokenize_fv(const FavoriteValue& fv);

// Each throws kZeroMu unless mu > 0.
double delta_unknown_min(double ev, double y_k, double mu);
double delta_unknown_other(double ev, double y_u, double mu);
double delta_known_min(double ev, double y_k, double mu, bool is_min_place);

// Moves the word's personal favorite value by eta * delta in token space and
// marks it known. For a word with no known value the starting token is
// (0.5, unknown_sign). Returns the stored value.
FavoriteValue apply_update(FavoriteValueDB& db, std::string_view person,
                           std::string_view word, double delta, double eta,
                           Sign unknown_sign = Sign::kPositive);

enum class MuSource { kFixedTable, kMstnDerived };

std::string_view mu_source_name(MuSource s);
std::optional<MuSource> parse_mu_source(std::string_view s);

struct LearningConfig {
  double eta = 0.5;
  MuSource mu_source = MuSource::kFixedTable;
  // Per-rule overrides of the rule file's CF, keyed by rule id.
  std::map<std::string, double, std::less<>> fixed_mu;
  double base_lambda = kDefaultThreshold;
  double mu_floor = 0.05;
  GroupStateMap group_map;

  // Throws kInvalidConfig.
  void validate() const;
};

// 0 for happy and quiet, 0.5 for surprise, 1 otherwise.
double mood_negativity(MentalState mood);

// base * (1 + 0.5 * negativity(mood)), capped at 1.
double mood_threshold(double base_lambda, MentalState mood);

// Transition probability from the mood to the state the dominant group leads
// to (self-transition when there is none), floored.
double mood_mu(const TransitionModel& model, MentalState mood,
               std::optional<int> dominant_group, const GroupStateMap& map,
               double floor);

struct FeedbackSample {
  CaseFrame cf;
  // Emotion magnitude in [0, 1]; the sign is carried separately.
  double ev = 0.0;
  Sign sign = Sign::kPositive;
  MentalState mood = MentalState::kQuiet;
  std::optional<int> dominant_group;
};

enum class LearningBranch { kUnknownMin, kUnknownOther, kKnownMin, kSkipped };

// "Eq.10", "Eq.12", "Eq.14" or "skipped".
std::string_view branch_name(LearningBranch b);

struct FvChange {
  std::string word;
  SlotRole role;
  FavoriteValue before;
  FavoriteValue after;
  double delta = 0.0;
};

struct LearningReport {
  std::string rule_id;
  LearningBranch branch = LearningBranch::kSkipped;
  std::string skip_reason;
  double mu = 0.0;
  double lambda = 0.0;
  double y_k = 0.0;
  double ev = 0.0;
  Sign ev_sign = Sign::kPositive;
  std::optional<SlotRole> min_role;
  std::map<SlotRole, Token> tokens;
  std::vector<FvChange> changes;
};

// Feedback below this distance from y_k changes nothing.
inline constexpr double kZeroErrorTolerance = 1e-12;

// Among the event's rules whose antecedents are all filled, the one with the
// highest output is used. Throws kNoMatchingRule; propagates kZeroMu.
LearningReport learn_from_turn(const FeedbackSample& sample,
                               FavoriteValueDB& db, std::string_view person,
                               const TransitionModel& model,
                               const LearningConfig& config,
                               const RuleBase& rules = RuleBase::builtin());

// Re-evaluates the rule output y_k for the event against the current db,
// using the same rule choice, mu and lambda as learn_from_turn.
double rule_output(const FeedbackSample& sample, const FavoriteValueDB& db,
                   std::string_view person, const TransitionModel& model,
                   const LearningConfig& config,
                   const RuleBase& rules = RuleBase::builtin());

// An utterance states like (positive) or dislike (negative) of a word with
// the given strength; the value moves toward sign * strength.
FavoriteValue learn_direct_expression(FavoriteValueDB& db,
                                      std::string_view person,
                                      std::string_view word, Sign polarity,
                                      double strength, double eta);

// Words met in an unpleasant event drift toward dislike by eta * displeasure.
// The predicate is left alone.
std::vector<FvChange> learn_from_displeasure(FavoriteValueDB& db,
                                             std::string_view person,
                                             const CaseFrame& cf,
                                             double displeasure, double eta);

// With exactly one unknown word in the event, searches its value so the
// event's emotion value comes closest to the expressed one, then moves it
// there by eta. Returns nothing when no single unknown word exists.
std::optional<FvChange> learn_backward_egc(FavoriteValueDB& db,
                                           std::string_view person,
                                           const CaseFrame& cf,
                                           double signed_ev, double eta,
                                           const EgcConfig& egc = {});

}  // namespace affect

#endif  // AFFECT_FV_LEARNING_HPP
