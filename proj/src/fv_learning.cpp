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

#include "affect/fv_learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace affect {

std::string_view sign_name(Sign s) { return s == Sign::kPositive ? "+" : "-"; }

std::optional<Sign> parse_sign(std::string_view s) {
  if (s == "+" || s == "positive") return Sign::kPositive;
  if (s == "-" || s == "negative") return Sign::kNegative;
  return std::nullopt;
}

Token tokenize_fv(const FavoriteValue& fv) {
  if (!fv.known) return {kUnknownFavoriteValue, Sign::kPositive};
  return {std::abs(fv.value), fv.value < 0.0 ? Sign::kNegative : Sign::kPositive};
}

namespace {

void require_mu(double mu) {
  if (!(mu > 0.0)) {
    throw Error(ErrorCode::kZeroMu, "certainty factor must be positive");
  }
}

}  // namespace

double delta_unknown_min(double ev, double y_k, double mu) {
  require_mu(mu);
  return (ev - y_k) / mu;
}

double delta_unknown_other(double ev, double y_u, double mu) {
  require_mu(mu);
  return (ev - y_u * mu) / mu;
}

double delta_known_min(double ev, double y_k, double mu, bool is_min_place) {
  require_mu(mu);
  return is_min_place ? (ev - y_k) / mu : 0.0;
}

FavoriteValue apply_update(FavoriteValueDB& db, std::string_view person,
                           std::string_view word, double delta, double eta,
                           Sign unknown_sign) {
  const FavoriteValue current = db.lookup(person, word);
  Token tok = tokenize_fv(current);
  if (!current.known) tok.sign = unknown_sign;
  double y = tok.y + eta * delta;
  if (y < 0.0) {
    tok.sign = flip(tok.sign);
    y = -y;
  }
  y = std::min(y, 1.0);
  const FavoriteValue updated{sign_factor(tok.sign) * y, true};
  db.set_personal(person, word, updated);
  return db.lookup(person, word);
}

std::string_view mu_source_name(MuSource s) {
  return s == MuSource::kFixedTable ? "fixed" : "mstn";
}

std::optional<MuSource> parse_mu_source(std::string_view s) {
  if (s == "fixed" || s == "FixedTable") return MuSource::kFixedTable;
  if (s == "mstn" || s == "MstnDerived") return MuSource::kMstnDerived;
  return std::nullopt;
}

void LearningConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "eta must lie in (0, 1]");
  }
  if (!(base_lambda >= 0.0 && base_lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "lambda must lie in [0, 1]");
  }
  if (!(mu_floor > 0.0 && mu_floor <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "mu floor must lie in (0, 1]");
  }
  for (const auto& [id, mu] : fixed_mu) {
    if (!(mu > 0.0 && mu <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "fixed mu for '" + id + "' must lie in (0, 1]");
    }
  }
}

double mood_negativity(MentalState mood) {
  switch (mood) {
    case MentalState::kHappy:
    case MentalState::kQuiet:
      return 0.0;
    case MentalState::kSurprise:
      return 0.5;
    default:
      return 1.0;
  }
}

double mood_threshold(double base_lambda, MentalState mood) {
  return std::min(1.0, base_lambda * (1.0 + 0.5 * mood_negativity(mood)));
}

double mood_mu(const TransitionModel& model, MentalState mood,
               std::optional<int> dominant_group, const GroupStateMap& map,
               double floor) {
  const MentalState to = dominant_group ? map(*dominant_group) : mood;
  return std::max(floor, 1.0 - model.cost(mood, to));
}

std::string_view branch_name(LearningBranch b) {
  switch (b) {
    case LearningBranch::kUnknownMin: return "Eq.10";
    case LearningBranch::kUnknownOther: return "Eq.12";
    case LearningBranch::kKnownMin: return "Eq.14";
    case LearningBranch::kSkipped: return "skipped";
  }
  return "?";
}

namespace {

struct RuleEvaluation {
  FuzzyRule rule;
  double mu = 0.0;
  double lambda = 0.0;
  double y_k = 0.0;
  bool fired = false;
  std::map<SlotRole, FavoriteValue> fvs;
  std::map<SlotRole, Token> tokens;
};

double rule_mu(const FuzzyRule& rule, const FeedbackSample& sample,
               const TransitionModel& model, const LearningConfig& config) {
  if (config.mu_source == MuSource::kMstnDerived) {
    return mood_mu(model, sample.mood, sample.dominant_group, config.group_map,
                   config.mu_floor);
  }
  if (auto it = config.fixed_mu.find(rule.id); it != config.fixed_mu.end()) {
    return it->second;
  }
  return rule.cf.front();
}

// Fills the antecedent slots and runs the single-rule net.
std::optional<RuleEvaluation> evaluate_rule(const FuzzyRule& rule,
                                            const FeedbackSample& sample,
                                            const FavoriteValueDB& db,
                                            std::string_view person,
                                            const TransitionModel& model,
                                            const LearningConfig& config) {
  RuleEvaluation ev;
  ev.rule = rule;
  TokenMap initial;
  for (const auto& prop : rule.antecedents) {
    const auto role = slot_of_proposition(prop);
    if (!role || !sample.cf.has(*role)) return std::nullopt;
    const FavoriteValue fv = db.lookup(person, sample.cf.word(*role));
    ev.fvs[*role] = fv;
    ev.tokens[*role] = tokenize_fv(fv);
    initial[prop] = ev.tokens[*role].y;
  }
  ev.mu = rule_mu(rule, sample, model, config);
  ev.lambda = mood_threshold(config.base_lambda, sample.mood);
  FuzzyRule single = rule;
  single.cf.assign(1, std::clamp(ev.mu, 0.0, 1.0));
  const FuzzyRule rules[] = {single};
  const auto net = FuzzyPetriNet::compile(rules, ev.lambda);
  const auto result = infer(net, initial, rule.consequents.front());
  ev.y_k = result.goal_value;
  ev.fired = !result.trace.empty();
  return ev;
}

RuleEvaluation choose_rule(const FeedbackSample& sample,
                           const FavoriteValueDB& db, std::string_view person,
                           const TransitionModel& model,
                           const LearningConfig& config,
                           const RuleBase& rules) {
  const EventType type = require_valid(sample.cf);
  std::optional<RuleEvaluation> best;
  for (const auto& rule : rules.rules_for(type)) {
    if (rule.kind != RuleKind::kType1) continue;
    auto ev = evaluate_rule(rule, sample, db, person, model, config);
    if (ev && (!best || ev->y_k > best->y_k)) best = std::move(ev);
  }
  if (!best) {
    throw Error(ErrorCode::kNoMatchingRule,
                "no applicable rule for " + sample.cf.event_type);
  }
  return *best;
}

}  // namespace

double rule_output(const FeedbackSample& sample, const FavoriteValueDB& db,
                   std::string_view person, const TransitionModel& model,
                   const LearningConfig& config, const RuleBase& rules) {
  return choose_rule(sample, db, person, model, config, rules).y_k;
}

LearningReport learn_from_turn(const FeedbackSample& sample,
                               FavoriteValueDB& db, std::string_view person,
                               const TransitionModel& model,
                               const LearningConfig& config,
                               const RuleBase& rules) {
  config.validate();
  if (!(sample.ev >= 0.0 && sample.ev <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "emotion value must lie in [0, 1]");
  }
  const RuleEvaluation eval =
      choose_rule(sample, db, person, model, config, rules);

  LearningReport report;
  report.rule_id = eval.rule.id;
  report.mu = eval.mu;
  report.lambda = eval.lambda;
  report.y_k = eval.y_k;
  report.ev = sample.ev;
  report.ev_sign = sample.sign;
  report.tokens = eval.tokens;

  if (!eval.fired) {
    report.branch = LearningBranch::kSkipped;
    report.skip_reason = "below threshold";
    return report;
  }

  // Minimum place; ties go to the lexicographically first role name.
  SlotRole min_role = eval.tokens.begin()->first;
  for (const auto& [role, tok] : eval.tokens) {
    const double best = eval.tokens.at(min_role).y;
    if (tok.y < best ||
        (tok.y == best && slot_role_name(role) < slot_role_name(min_role))) {
      min_role = role;
    }
  }
  report.min_role = min_role;

  std::vector<std::pair<SlotRole, double>> updates;
  const bool min_unknown = !eval.fvs.at(min_role).known;
  std::vector<SlotRole> unknown_others;
  for (const auto& [role, fv] : eval.fvs) {
    if (role != min_role && !fv.known) unknown_others.push_back(role);
  }
  std::sort(unknown_others.begin(), unknown_others.end(),
            [](SlotRole a, SlotRole b) {
              return slot_role_name(a) < slot_role_name(b);
            });

  if (min_unknown) {
    report.branch = LearningBranch::kUnknownMin;
    updates.emplace_back(min_role,
                         delta_unknown_min(sample.ev, eval.y_k, eval.mu));
  } else if (!unknown_others.empty()) {
    report.branch = LearningBranch::kUnknownOther;
    for (SlotRole u : unknown_others) {
      updates.emplace_back(
          u, delta_unknown_other(sample.ev, eval.tokens.at(u).y, eval.mu));
    }
  } else {
    const auto negatives = std::count_if(
        eval.fvs.begin(), eval.fvs.end(),
        [](const auto& kv) { return kv.second.value < 0.0; });
    if (negatives >= 2) {
      report.branch = LearningBranch::kSkipped;
      report.skip_reason = "two negative favorite values";
      return report;
    }
    report.branch = LearningBranch::kKnownMin;
    for (const auto& [role, _] : eval.fvs) {
      const double d =
          delta_known_min(sample.ev, eval.y_k, eval.mu, role == min_role);
      if (d != 0.0) updates.emplace_back(role, d);
    }
  }

  if (std::abs(sample.ev - eval.y_k) <= kZeroErrorTolerance) return report;

  std::set<std::string> touched;
  for (const auto& [role, delta] : updates) {
    const std::string& word = sample.cf.word(role);
    if (delta == 0.0 || !touched.insert(normalize_word(word)).second) continue;
    FvChange change{word, role, db.lookup(person, word), {}, delta};
    change.after = apply_update(db, person, word, delta, config.eta, sample.sign);
    report.changes.push_back(change);
  }
  return report;
}

FavoriteValue learn_direct_expression(FavoriteValueDB& db,
                                      std::string_view person,
                                      std::string_view word, Sign polarity,
                                      double strength, double eta) {
  strength = std::clamp(strength, 0.0, 1.0);
  const FavoriteValue current = db.lookup(person, word);
  Token tok = tokenize_fv(current);
  if (!current.known) tok.sign = polarity;
  // Same sign: close the gap in magnitude. Opposite: cross zero.
  const double delta =
      tok.sign == polarity ? strength - tok.y : -(tok.y + strength);
  return apply_update(db, person, word, delta, eta, polarity);
}

std::vector<FvChange> learn_from_displeasure(FavoriteValueDB& db,
                                             std::string_view person,
                                             const CaseFrame& cf,
                                             double displeasure, double eta) {
  displeasure = std::clamp(displeasure, 0.0, 1.0);
  std::vector<FvChange> changes;
  std::set<std::string> touched;
  for (const auto& [role, word] : cf.slots) {
    if (role == SlotRole::P || !touched.insert(normalize_word(word)).second) {
      continue;
    }
    const FavoriteValue before = db.lookup(person, word);
    const Token tok = tokenize_fv(before);
    const double delta = tok.sign == Sign::kPositive ? -displeasure : displeasure;
    FvChange change{word, role, before, {}, delta};
    change.after = apply_update(db, person, word, delta, eta, Sign::kPositive);
    changes.push_back(change);
  }
  return changes;
}

std::optional<FvChange> learn_backward_egc(FavoriteValueDB& db,
                                           std::string_view person,
                                           const CaseFrame& cf,
                                           double signed_ev, double eta,
                                           const EgcConfig& egc) {
  const EventType type = require_valid(cf);
  const auto slots = resolve_slots(cf, db, person);
  std::optional<SlotRole> unknown;
  for (const auto& [role, slot] : slots) {
    if (slot.fv.known) continue;
    if (unknown) return std::nullopt;
    unknown = role;
  }
  if (!unknown) return std::nullopt;

  SlotValues values;
  for (const auto& [role, slot] : slots) values[role] = slot.fv.effective();

  // Grid search over [-1, 1]; ties prefer the value nearest the unknown 0.5.
  constexpr int kSteps = 4000;
  double best_value = kUnknownFavoriteValue;
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSteps; ++i) {
    const double candidate = -1.0 + 2.0 * i / kSteps;
    values[*unknown] = candidate;
    const double err =
        std::abs(egc_from_values(type, values, egc).signed_value - signed_ev);
    if (err < best_err - 1e-15 ||
        (std::abs(err - best_err) <= 1e-15 &&
         std::abs(candidate - kUnknownFavoriteValue) <
             std::abs(best_value - kUnknownFavoriteValue))) {
      best_err = err;
      best_value = candidate;
    }
  }
  const Sign target_sign = best_value < 0.0 ? Sign::kNegative : Sign::kPositive;
  const double delta = std::abs(best_value) - kUnknownFavoriteValue;
  const std::string& word = cf.word(*unknown);
  FvChange change{word, *unknown, db.lookup(person, word), {}, delta};
  change.after = apply_update(db, person, word, delta, eta, target_sign);
  return change;
}

}  // namespace affect
