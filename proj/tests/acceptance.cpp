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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "affect/egc.hpp"
#include "affect/fpn.hpp"
#include "affect/fv_learning.hpp"
#include "affect/mstn.hpp"
#include "affect/session.hpp"
#include "fpn_check.hpp"
#include "oracles.hpp"
#include "script_gen.hpp"

using namespace affect;

namespace {

// Returns an empty string on success, else what went wrong.
using Check = std::function<std::string()>;

struct Criterion {
  int number;
  const char* title;
  double budget_s;  // 0 means unbounded
  Check check;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// ---------------------------------------------------------------------------

std::string octant_table() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> mag(0.01, 1.0);
  std::set<std::string> pleasure;
  for (const auto& row : oracle::kSignTable) {
    for (int i = 0; i < 100; ++i) {
      const SyntheticVector<double> v(row.s1 * mag(rng), row.s2 * mag(rng), row.s3 * mag(rng));
      const Octant o = octant_of(v);
      if (octant_name(o) != row.area) return std::string("wrong octant for ") + row.area;
      if ((pleasure_sign(o) > 0) != row.pleasure) {
        return std::string("wrong polarity for ") + row.area;
      }
      if ((signed_emotion_value(v) > 0) != row.pleasure) {
        return std::string("signed value disagrees for ") + row.area;
      }
    }
    if (row.pleasure) pleasure.insert(row.area);
  }
  if (pleasure != std::set<std::string>{"I", "III", "VI", "VIII"}) return "pleasure set";
  return "";
}

std::string transition_table() {
  const TransitionTableFile file = parse_transition_table(default_transition_table_json());
  if (file.probabilities != default_probability_table()) return "shipped file differs";
  for (int i = 0; i < kMentalStateCount; ++i) {
    const double s = file.probabilities.row(i).sum();
    if (std::fabs(s - 1.0) > kRowSumTolerance) return fmt("row sum %.6f", s);
  }
  const TransitionModel m = init_from_table(file.probabilities, file.pseudo_count);
  const MentalState s1 = MentalState::kHappy;
  if (m.count(s1, s1) != 421.0 || m.row_sum(s1) != 997.0) return "seeded counts";
  const double c = cost(m, s1, s1);
  if (std::fabs(c - (1.0 - 421.0 / 997.0)) > 1e-9) return fmt("cost %.12f", c);
  if (std::fabs(c - 0.577733) > 5e-7) return fmt("cost %.12f not 0.577733", c);

  // A row outside tolerance is refused.
  ProbabilityTable bad = file.probabilities;
  bad(2, 2) += 0.02;
  try {
    (void)init_from_table(bad);
    return "row sum 1.02 accepted";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRowSumOutOfTolerance) return "wrong error for row sum";
  }
  return "";
}

std::string selection_vs_brute_force() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cnt(0, 12), strength(0, 8), st(0, 6), coin(0, 3);
  std::array<int, 9> to{};
  const GroupStateMap map;
  for (int k = 0; k < 9; ++k) to[k] = index_of(map(k + 1));
  long ties = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::array<std::array<std::int64_t, 7>, 7> c{};
    TransitionMatrix<double> counts;
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        c[i][j] = coin(rng) == 0 ? 0 : cnt(rng);
        counts(i, j) = static_cast<double>(c[i][j]);
      }
      if (counts.row(i).sum() == 0) {
        c[i][i] = 1;
        counts(i, i) = 1;
      }
    }
    const int cur = st(rng);
    TransitionModel m = TransitionModel::from_counts(counts, state_at(cur));
    std::array<std::int64_t, 9> a{};
    GroupStrengthVector e;
    for (int k = 0; k < 9; ++k) {
      a[k] = coin(rng) == 0 ? 0 : strength(rng);
      e(k) = a[k] / 8.0;
    }
    // Count instances where some group loses only on index.
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (int k = 0; k < 9; ++k) {
      if (a[k] > 0 && !seen.insert({a[k], c[cur][to[k]]}).second) {
        ++ties;
        break;
      }
    }
    const auto want = oracle::brute_force_select(c, cur, a, to);
    const Selection got = select_emotion_and_next(m, e, map);
    if (got.group != want.group || index_of(got.to) != want.next) {
      return "mismatch at trial " + std::to_string(trial);
    }
  }
  if (ties == 0) return "no ties exercised";
  return "";
}

std::string fpn_properties() {
  std::mt19937_64 rng(4);
  fpn_check::Counts counts;
  for (int i = 0; i < 1000; ++i) fpn_check::check_one(rng, counts);
  if (counts.nets < 1000) return "too few nets";
  if (counts.violations() != 0) {
    std::string msg = std::to_string(counts.violations()) + " violations";
    for (const auto& f : counts.first_failures) msg += "; " + f;
    return msg;
  }
  return "";
}

std::string spot_values() {
  const std::vector<FuzzyRule> t1 = {{"r", RuleKind::kType1, {"a", "b"}, {"k"}, {0.8}}};
  const double v1 = infer(compile_rules(t1), {{"a", 0.9}, {"b", 0.7}}, "k").goal_value;
  if (std::fabs(v1 - 0.56) > 1e-12) return fmt("type 1 gave %.15f", v1);
  const std::vector<FuzzyRule> t3 = {{"r", RuleKind::kType3, {"a", "b"}, {"k"}, {0.6, 0.4}}};
  const double v3 = infer(compile_rules(t3), {{"a", 0.5}, {"b", 0.9}}, "k").goal_value;
  if (std::fabs(v3 - 0.36) > 1e-12) return fmt("type 3 gave %.15f", v3);
  return "";
}

std::string learning_convergence() {
  const TransitionModel model = init_from_table(default_probability_table());
  FavoriteValueDB base;
  base.set_initial("i", {0.9, true});
  base.set_initial("eat", {0.8, true});
  FeedbackSample s;
  s.cf.event_type = "V(S,O)";
  s.cf.slots = {{SlotRole::S, "i"}, {SlotRole::O, "pie"}, {SlotRole::P, "eat"}};

  {
    FavoriteValueDB db = base;
    LearningConfig cfg;
    cfg.eta = 1.0;
    s.ev = 0.3;
    learn_from_turn(s, db, "p", model, cfg);
    const double y = rule_output(s, db, "p", model, cfg);
    if (std::fabs(y - s.ev) >= 1e-9) return fmt("eta 1: y_k %.12f vs %.3f", y, s.ev);
  }
  {
    FavoriteValueDB db = base;
    LearningConfig cfg;
    cfg.eta = 0.5;
    s.ev = 0.2;
    double err = s.ev - rule_output(s, db, "p", model, cfg);
    for (int turn = 0; turn < 10; ++turn) {
      learn_from_turn(s, db, "p", model, cfg);
      const double next = s.ev - rule_output(s, db, "p", model, cfg);
      if (std::fabs(next / err - 0.5) > 1e-6) {
        return fmt("eta 0.5: ratio %.9f at turn %.0f", next / err, turn);
      }
      err = next;
    }
  }
  return "";
}

bool in_range(const FavoriteValue& fv) { return fv.value >= -1.0 && fv.value <= 1.0; }

std::string learning_fuzz() {
  const std::set<std::string> branches = {"Eq.10", "Eq.12", "Eq.14", "skipped"};
  std::mt19937_64 rng(7);
  long turns = 0, feedbacks = 0;
  std::set<std::string> seen;
  for (MuSource mu : {MuSource::kFixedTable, MuSource::kMstnDerived}) {
    EngineConfig cfg;
    cfg.learning.mu_source = mu;
    std::uniform_real_distribution<double> eta(0.05, 1.0);
    for (int block = 0; block < 10; ++block) {
      cfg.learning.eta = eta(rng);
      Session s("fuzz", "p", script_gen::vocabulary_db(rng()), cfg);
      for (const auto& t : script_gen::random_script(rng, 500)) {
        s.run(t);
        ++turns;
        const auto& rec = s.turns().back();
        if (rec.learning) {
          ++feedbacks;
          const std::string b(branch_name(rec.learning->branch));
          if (!branches.count(b)) return "unexpected branch " + b;
          seen.insert(b);
          for (const auto& ch : rec.learning->changes) {
            if (!in_range(ch.after)) return "value out of range for " + ch.word;
          }
        }
        for (const auto& [k, fv] : s.db().personal()) {
          if (!in_range(fv)) return "stored value out of range for " + k.second;
        }
      }
    }
  }
  if (turns < 10000) return "too few turns";
  if (seen.size() < branches.size()) return "not every branch exercised";
  (void)feedbacks;
  return "";
}

std::string replay_identical() {
  std::mt19937_64 rng(8);
  const auto script = script_gen::random_script(rng, 100);
  const FavoriteValueDB db = script_gen::vocabulary_db();
  auto trace = [&] {
    std::ostringstream os;
    write_trace(os, replay("a", std::string(kDefaultPersona), db, EngineConfig{}, script).turns());
    return os.str();
  };
  const std::string first = trace(), second = trace();
  if (first.empty()) return "empty trace";
  if (first != second) return "traces differ";
  return "";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "octant table: 8 octants, pleasure in I, III, VI, VIII", 1.0, octant_table},
      {2, "transition table loads; cost(s1,s1) = 1 - 421/997", 1.0, transition_table},
      {3, "emotion/next-state selection matches brute force on 10000 instances", 10.0,
       selection_vs_brute_force},
      {4, "fuzzy Petri net properties on 1000 random acyclic nets", 30.0, fpn_properties},
      {5, "firing spot values 0.56 and 0.36", 0.0, spot_values},
      {6, "learning converges (eta 1 in one turn, eta 0.5 halves error)", 1.0,
       learning_convergence},
      {7, "10000-turn learning fuzz keeps values in [-1, 1]", 30.0, learning_fuzz},
      {8, "100-turn replay is byte-identical", 0.0, replay_identical},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.check();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && c.budget_s > 0 && secs >= c.budget_s) {
      why = fmt("took %.3f s, budget %.0f s", secs, c.budget_s);
    }
    std::printf("%s [%d] %s (%.3f s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.number, c.title,
                secs, why.empty() ? "" : ": ", why.c_str());
    if (!why.empty()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
