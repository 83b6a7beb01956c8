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

// Fuzzy Petri nets built from fuzzy production rules.
//
// Each distinct proposition becomes one place holding a truth token in
// [0, 1]; each rule becomes one transition with certainty factor(s) mu.
// A transition is enabled when every input token reaches the threshold
// lambda. Firing deposits
//
//   type 1  IF a and b ... THEN k      y_k = min(y_a, y_b, ...) * mu
//   type 2  IF a THEN k1 and k2 ...    y_kl = y_a * mu           (each l)
//   type 3  IF a or b ... THEN k       y_k = max(y_a * mu_a, y_b * mu_b, ...)
//
// into the output places, combining with an existing token by max. Type 4
// (disjunctive consequents) has no definite implication and is rejected.
//
// Each transition fires at most once. An input token is removed once every
// transition consuming that place has fired, so on an acyclic net the final
// marking does not depend on which topological order is used.

#ifndef AFFECT_FPN_HPP
#define AFFECT_FPN_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "affect/core_model.hpp"

namespace affect {

inline constexpr double kDefaultThreshold = 0.1;

enum class RuleKind { kType1, kType2, kType3, kType4 };

std::string_view rule_kind_name(RuleKind kind);

struct FuzzyRule {
  std::string id;
  RuleKind kind = RuleKind::kType1;
  std::vector<std::string> antecedents;
  std::vector<std::string> consequents;
  // One value for types 1 and 2, one per antecedent for type 3.
  std::vector<double> cf;

  friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

// Throws kType4Rejected, kMalformedRule or kDuplicateProposition.
void validate_rule(const FuzzyRule& rule);

struct Transition {
  std::string id;
  RuleKind kind;
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<double> mu;
};

class FuzzyPetriNet {
 public:
  // One place per distinct proposition, in order of first appearance.
  // Throws on invalid rules and kCyclicNet.
  static FuzzyPetriNet compile(std::span<const FuzzyRule> rules,
                               double threshold = kDefaultThreshold);

  int place_count() const { return static_cast<int>(propositions_.size()); }
  int transition_count() const { return static_cast<int>(transitions_.size()); }

  const std::string& proposition(int place) const { return propositions_.at(place); }
  std::optional<int> place_of(std::string_view proposition) const;

  const Transition& transition(int t) const { return transitions_.at(t); }
  const std::vector<Transition>& transitions() const { return transitions_; }

  double threshold() const { return threshold_; }
  FuzzyPetriNet with_threshold(double threshold) const;

  const std::vector<int>& consumers(int place) const { return consumers_.at(place); }
  const std::vector<int>& producers(int place) const { return producers_.at(place); }

  // Kahn order; ties broken by lowest transition index.
  const std::vector<int>& topological_order() const { return order_; }

  // True when t1 must fire before t2 (some output of t1 feeds t2).
  bool precedes(int t1, int t2) const;

 private:
  FuzzyPetriNet() = default;

  std::vector<std::string> propositions_;
  std::map<std::string, int, std::less<>> place_index_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<int>> consumers_;
  std::vector<std::vector<int>> producers_;
  std::vector<int> order_;
  double threshold_ = kDefaultThreshold;
};

inline FuzzyPetriNet compile_rules(std::span<const FuzzyRule> rules,
                                   double threshold = kDefaultThreshold) {
  return FuzzyPetriNet::compile(rules, threshold);
}

struct Marking {
  Eigen::VectorXd tokens;
  std::vector<bool> fired;

  friend bool operator==(const Marking& a, const Marking& b) {
    return a.fired == b.fired && a.tokens == b.tokens;
  }
};

using TokenMap = std::map<std::string, double, std::less<>>;

// Zero everywhere except the given propositions. Throws kInvalidConfig for
// unknown propositions or tokens outside [0, 1].
Marking make_marking(const FuzzyPetriNet& net, const TokenMap& tokens);

// Not yet fired and every input token >= threshold.
bool enabled(const FuzzyPetriNet& net, const Marking& marking, int t);

// Output values t would deposit, one per output place. No gating.
std::vector<double> transition_outputs(const FuzzyPetriNet& net,
                                       const Marking& marking, int t);

// Throws kNotEnabled.
void fire(const FuzzyPetriNet& net, Marking& marking, int t);

struct FiringStep {
  int transition;
  std::string id;
  std::vector<double> outputs;
};

struct Inference {
  // Highest token the goal place held; 0 if never marked.
  double goal_value = 0.0;
  std::vector<FiringStep> trace;
  Marking marking;
};

// Fires enabled transitions in topological order until quiescence.
// Throws kUnknownGoal.
Inference infer(const FuzzyPetriNet& net, const TokenMap& initial_tokens,
                std::string_view goal);

// Rule file: one rule per line, '#' comments,
//   <id> <type1|type2|type3> <a,b,...> <k1,k2,...> <cf[,cf...]>
std::vector<FuzzyRule> parse_rules(std::istream& in);
std::vector<FuzzyRule> load_rules(const std::string& path);
std::string format_rule(const FuzzyRule& rule);

inline constexpr std::string_view kLikeProposition = "LIKE";

// "V" names the predicate; other propositions are slot-role names.
std::optional<SlotRole> slot_of_proposition(std::string_view proposition);
std::string proposition_of_slot(SlotRole role);

// Rules for emotion generating calculations, keyed by rule id.
class RuleBase {
 public:
  RuleBase() = default;
  explicit RuleBase(std::vector<FuzzyRule> rules);

  static const RuleBase& builtin();
  static std::string_view builtin_text();

  const FuzzyRule& rule(std::string_view id) const;
  bool contains(std::string_view id) const;
  const std::vector<FuzzyRule>& rules() const { return rules_; }

  // Or-forms return both split variants. Throws kNoMatchingRule.
  std::vector<FuzzyRule> rules_for(EventType type) const;

 private:
  std::vector<FuzzyRule> rules_;
};

// Rule ids covering an event type ("R6"; "R51", "R52"; ...).
std::vector<std::string> rule_ids_for(EventType type);

inline std::vector<FuzzyRule> egc_rule_base(
    EventType type, const RuleBase& base = RuleBase::builtin()) {
  return base.rules_for(type);
}

}  // namespace affect

#endif  // AFFECT_FPN_HPP
