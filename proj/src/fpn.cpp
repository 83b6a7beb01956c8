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

#include "affect/fpn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "affect/builtin_data.hpp"

namespace affect {

std::string_view rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::kType1: return "type1";
    case RuleKind::kType2: return "type2";
    case RuleKind::kType3: return "type3";
    case RuleKind::kType4: return "type4";
  }
  return "?";
}

namespace {

[[noreturn]] void malformed(const FuzzyRule& rule, const std::string& what) {
  throw Error(ErrorCode::kMalformedRule, "rule '" + rule.id + "': " + what);
}

void check_unique(const FuzzyRule& rule, const std::vector<std::string>& props) {
  std::set<std::string_view> seen;
  for (const auto& p : props) {
    if (p.empty()) malformed(rule, "empty proposition");
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::kDuplicateProposition,
                  "rule '" + rule.id + "': proposition '" + p +
                      "' appears twice");
    }
  }
}

}  // namespace

void validate_rule(const FuzzyRule& rule) {
  if (rule.kind == RuleKind::kType4) {
    throw Error(ErrorCode::kType4Rejected,
                "rule '" + rule.id + "': type 4 rules have no definite "
                                     "implication");
  }
  if (rule.antecedents.empty()) malformed(rule, "no antecedents");
  if (rule.consequents.empty()) malformed(rule, "no consequents");
  check_unique(rule, rule.antecedents);
  check_unique(rule, rule.consequents);
  switch (rule.kind) {
    case RuleKind::kType1:
      if (rule.consequents.size() != 1) malformed(rule, "type 1 has one consequent");
      if (rule.cf.size() != 1) malformed(rule, "type 1 has one CF");
      break;
    case RuleKind::kType2:
      if (rule.antecedents.size() != 1) malformed(rule, "type 2 has one antecedent");
      if (rule.cf.size() != 1) malformed(rule, "type 2 has one CF");
      break;
    case RuleKind::kType3:
      if (rule.consequents.size() != 1) malformed(rule, "type 3 has one consequent");
      if (rule.cf.size() != rule.antecedents.size()) {
        malformed(rule, "type 3 needs one CF per antecedent");
      }
      break;
    case RuleKind::kType4:
      break;
  }
  for (double mu : rule.cf) {
    if (!(mu >= 0.0 && mu <= 1.0)) malformed(rule, "CF outside [0, 1]");
  }
}

FuzzyPetriNet FuzzyPetriNet::compile(std::span<const FuzzyRule> rules,
                                     double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "threshold outside [0, 1]");
  }
  FuzzyPetriNet net;
  net.threshold_ = threshold;
  auto place = [&net](const std::string& prop) {
    auto [it, inserted] =
        net.place_index_.try_emplace(prop, static_cast<int>(net.propositions_.size()));
    if (inserted) net.propositions_.push_back(prop);
    return it->second;
  };
  std::set<std::string_view> ids;
  for (const auto& rule : rules) {
    validate_rule(rule);
    if (!rule.id.empty() && !ids.insert(rule.id).second) {
      malformed(rule, "duplicate rule id");
    }
    Transition t{rule.id, rule.kind, {}, {}, rule.cf};
    for (const auto& a : rule.antecedents) t.inputs.push_back(place(a));
    for (const auto& c : rule.consequents) t.outputs.push_back(place(c));
    net.transitions_.push_back(std::move(t));
  }

  const int np = net.place_count();
  const int nt = net.transition_count();
  net.consumers_.assign(np, {});
  net.producers_.assign(np, {});
  for (int t = 0; t < nt; ++t) {
    for (int p : net.transitions_[t].inputs) net.consumers_[p].push_back(t);
    for (int p : net.transitions_[t].outputs) net.producers_[p].push_back(t);
  }

  // Kahn over the transition dependency graph.
  std::vector<int> indegree(nt, 0);
  for (int t = 0; t < nt; ++t) {
    for (int p : net.transitions_[t].inputs) {
      indegree[t] += static_cast<int>(net.producers_[p].size());
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int t = 0; t < nt; ++t) {
    if (indegree[t] == 0) ready.push(t);
  }
  while (!ready.empty()) {
    const int t = ready.top();
    ready.pop();
    net.order_.push_back(t);
    for (int p : net.transitions_[t].outputs) {
      for (int c : net.consumers_[p]) {
        if (--indegree[c] == 0) ready.push(c);
      }
    }
  }
  if (static_cast<int>(net.order_.size()) != nt) {
    throw Error(ErrorCode::kCyclicNet, "rule set contains a cycle");
  }
  return net;
}

std::optional<int> FuzzyPetriNet::place_of(std::string_view proposition) const {
  auto it = place_index_.find(proposition);
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

FuzzyPetriNet FuzzyPetriNet::with_threshold(double threshold) const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "threshold outside [0, 1]");
  }
  FuzzyPetriNet copy = *this;
  copy.threshold_ = threshold;
  return copy;
}

bool FuzzyPetriNet::precedes(int t1, int t2) const {
  for (int p : transitions_.at(t1).outputs) {
    const auto& in = transitions_.at(t2).inputs;
    if (std::find(in.begin(), in.end(), p) != in.end()) return true;
  }
  return false;
}

Marking make_marking(const FuzzyPetriNet& net, const TokenMap& tokens) {
  Marking m{Eigen::VectorXd::Zero(net.place_count()),
            std::vector<bool>(net.transition_count(), false)};
  for (const auto& [prop, y] : tokens) {
    auto p = net.place_of(prop);
    if (!p) {
      throw Error(ErrorCode::kInvalidConfig,
                  "no place for proposition '" + prop + "'");
    }
    if (!(y >= 0.0 && y <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "token for '" + prop + "' outside [0, 1]");
    }
    m.tokens(*p) = y;
  }
  return m;
}

bool enabled(const FuzzyPetriNet& net, const Marking& marking, int t) {
  if (marking.fired.at(t)) return false;
  for (int p : net.transition(t).inputs) {
    if (marking.tokens(p) < net.threshold()) return false;
  }
  return true;
}

std::vector<double> transition_outputs(const FuzzyPetriNet& net,
                                       const Marking& marking, int t) {
  const Transition& tr = net.transition(t);
  switch (tr.kind) {
    case RuleKind::kType1: {
      double y = 1.0;
      for (int p : tr.inputs) y = std::min(y, marking.tokens(p));
      return {y * tr.mu[0]};
    }
    case RuleKind::kType2:
      return std::vector<double>(tr.outputs.size(),
                                 marking.tokens(tr.inputs[0]) * tr.mu[0]);
    case RuleKind::kType3: {
      double y = 0.0;
      for (std::size_t l = 0; l < tr.inputs.size(); ++l) {
        y = std::max(y, marking.tokens(tr.inputs[l]) * tr.mu[l]);
      }
      return {y};
    }
    case RuleKind::kType4:
      break;
  }
  throw Error(ErrorCode::kType4Rejected, "type 4 transition");
}

void fire(const FuzzyPetriNet& net, Marking& marking, int t) {
  if (!enabled(net, marking, t)) {
    throw Error(ErrorCode::kNotEnabled,
                "transition '" + net.transition(t).id + "' is not enabled");
  }
  const Transition& tr = net.transition(t);
  const auto values = transition_outputs(net, marking, t);
  marking.fired[t] = true;
  for (int p : tr.inputs) {
    const auto& users = net.consumers(p);
    const bool all_done = std::all_of(users.begin(), users.end(),
                                      [&](int c) { return marking.fired[c]; });
    if (all_done) marking.tokens(p) = 0.0;
  }
  for (std::size_t k = 0; k < tr.outputs.size(); ++k) {
    double& y = marking.tokens(tr.outputs[k]);
    y = std::max(y, values[k]);
  }
}

Inference infer(const FuzzyPetriNet& net, const TokenMap& initial_tokens,
                std::string_view goal) {
  const auto goal_place = net.place_of(goal);
  if (!goal_place) {
    throw Error(ErrorCode::kUnknownGoal,
                "unknown goal '" + std::string(goal) + "'");
  }
  Inference out;
  out.marking = make_marking(net, initial_tokens);
  out.goal_value = out.marking.tokens(*goal_place);
  for (int t : net.topological_order()) {
    if (!enabled(net, out.marking, t)) continue;
    auto values = transition_outputs(net, out.marking, t);
    fire(net, out.marking, t);
    out.trace.push_back({t, net.transition(t).id, std::move(values)});
    out.goal_value = std::max(out.goal_value, out.marking.tokens(*goal_place));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rule files

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

[[noreturn]] void rule_line_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedRule,
              "rules line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<FuzzyRule> parse_rules(std::istream& in) {
  std::vector<FuzzyRule> rules;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream fields(text);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.empty()) continue;
    if (parts.size() != 5) rule_line_error(line_no, "expected 5 fields");
    FuzzyRule rule;
    rule.id = parts[0];
    std::string kind = parts[1];
    std::transform(kind.begin(), kind.end(), kind.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (kind == "type1") rule.kind = RuleKind::kType1;
    else if (kind == "type2") rule.kind = RuleKind::kType2;
    else if (kind == "type3") rule.kind = RuleKind::kType3;
    else if (kind == "type4") rule.kind = RuleKind::kType4;
    else rule_line_error(line_no, "unknown rule kind '" + parts[1] + "'");
    rule.antecedents = split_list(parts[2]);
    rule.consequents = split_list(parts[3]);
    for (const auto& v : split_list(parts[4])) {
      std::size_t used = 0;
      double mu = 0.0;
      try {
        mu = std::stod(v, &used);
      } catch (const std::exception&) {
        rule_line_error(line_no, "bad CF '" + v + "'");
      }
      if (used != v.size()) rule_line_error(line_no, "bad CF '" + v + "'");
      rule.cf.push_back(mu);
    }
    try {
      validate_rule(rule);
    } catch (const Error& e) {
      throw Error(e.code(), "rules line " + std::to_string(line_no) + ": " +
                                e.what());
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<FuzzyRule> load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open rules '" + path + "'");
  return parse_rules(in);
}

std::string format_rule(const FuzzyRule& rule) {
  auto join = [](const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
  };
  std::ostringstream cf;
  for (std::size_t i = 0; i < rule.cf.size(); ++i) {
    cf << (i ? "," : "") << rule.cf[i];
  }
  return rule.id + " " + std::string(rule_kind_name(rule.kind)) + " " +
         join(rule.antecedents) + " " + join(rule.consequents) + " " + cf.str();
}

std::optional<SlotRole> slot_of_proposition(std::string_view proposition) {
  if (proposition == "V") return SlotRole::P;
  if (proposition == "P") return std::nullopt;
  return parse_slot_role(proposition);
}

std::string proposition_of_slot(SlotRole role) {
  return role == SlotRole::P ? "V" : std::string(slot_role_name(role));
}

RuleBase::RuleBase(std::vector<FuzzyRule> rules) : rules_(std::move(rules)) {
  std::set<std::string_view> ids;
  for (const auto& r : rules_) {
    validate_rule(r);
    if (!ids.insert(r.id).second) malformed(r, "duplicate rule id");
  }
}

std::string_view RuleBase::builtin_text() { return builtin_data::kEgcRulesText; }

const RuleBase& RuleBase::builtin() {
  static const RuleBase base = [] {
    std::istringstream in{std::string(builtin_text())};
    return RuleBase(parse_rules(in));
  }();
  return base;
}

bool RuleBase::contains(std::string_view id) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [&](const FuzzyRule& r) { return r.id == id; });
}

const FuzzyRule& RuleBase::rule(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::kNoMatchingRule,
              "no rule '" + std::string(id) + "' in rule base");
}

std::vector<std::string> rule_ids_for(EventType type) {
  switch (type) {
    case EventType::V_S:
    case EventType::A_S_C:
    case EventType::A_S_OF_C:
    case EventType::A_S_OT_C:
    case EventType::A_S_OM_C:
    case EventType::A_S_OS_C:
      return {"R1"};
    case EventType::V_S_OF: return {"R2"};
    case EventType::V_S_OT: return {"R3"};
    case EventType::V_S_OM: return {"R4"};
    case EventType::V_S_OS: return {"R51", "R52"};
    case EventType::V_S_O: return {"R6"};
    case EventType::V_S_O_OF: return {"R71", "R72"};
    case EventType::V_S_O_OT: return {"R81", "R82"};
    case EventType::V_S_O_OM: return {"R9"};
    case EventType::V_S_O_I: return {"R10"};
    case EventType::V_S_O_OC: return {"R11"};
    case EventType::A_S_O_C: return {"R10"};
  }
  return {};
}

std::vector<FuzzyRule> RuleBase::rules_for(EventType type) const {
  std::vector<FuzzyRule> out;
  for (const auto& id : rule_ids_for(type)) out.push_back(rule(id));
  if (out.empty()) {
    throw Error(ErrorCode::kNoMatchingRule,
                "no rule for " + std::string(event_type_name(type)));
  }
  return out;
}

}  // namespace affect
