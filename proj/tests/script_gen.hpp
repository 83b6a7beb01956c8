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

// Random session scripts over a small vocabulary.

#ifndef AFFECT_TESTS_SCRIPT_GEN_HPP
#define AFFECT_TESTS_SCRIPT_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "affect/session.hpp"
#include "oracles.hpp"

namespace script_gen {

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> k = {
      "i",     "you",   "friend", "dog",   "cake", "rain", "exam", "gift",
      "knife", "train", "eat",    "give",  "lose", "like", "hate", "go",
      "park",  "movie", "tom",    "sushi", "late", "win",  "storm", "tea"};
  return k;
}

// Roughly two thirds of the vocabulary has an initial value.
inline affect::FavoriteValueDB vocabulary_db(std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::uniform_int_distribution<int> d(0, 2);
  affect::FavoriteValueDB db;
  for (const auto& w : vocabulary()) {
    if (d(rng) != 0) db.set_initial(w, {v(rng), true});
  }
  return db;
}

inline affect::CaseFrame random_frame(std::mt19937_64& rng) {
  const auto& types = oracle::event_type_names();
  std::uniform_int_distribution<std::size_t> t(0, types.size() - 1);
  std::uniform_int_distribution<std::size_t> w(0, vocabulary().size() - 1);
  affect::CaseFrame cf;
  cf.event_type = types[t(rng)];
  for (const auto& role : oracle::slots_of(cf.event_type)) {
    cf.slots[*affect::parse_slot_role(role)] = vocabulary()[w(rng)];
  }
  return cf;
}

inline affect::ElicitingContext random_context(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 5), three(0, 2), four(0, 3);
  affect::ElicitingContext ctx;
  if (d(rng) > 1) return ctx;  // mostly plain
  ctx.target = three(rng) == 0 ? affect::Target::kOther : affect::Target::kSelf;
  ctx.other_fortune = static_cast<affect::OtherFortune>(three(rng));
  ctx.temporal = static_cast<affect::Temporal>(four(rng));
  ctx.agency = static_cast<affect::Agency>(three(rng));
  ctx.approval = static_cast<affect::Approval>(three(rng));
  return ctx;
}

// Feedback values are drawn on a 1/1000 grid so that they survive a text
// round trip unchanged.
inline std::vector<affect::ScriptTurn> random_script(std::mt19937_64& rng, int turns) {
  std::uniform_int_distribution<int> ev(0, 1000), coin(0, 2), sign(0, 1);
  std::vector<affect::ScriptTurn> script;
  for (int i = 0; i < turns; ++i) {
    affect::ScriptTurn t;
    t.event = random_frame(rng);
    t.context = random_context(rng);
    if (coin(rng) != 0) {
      t.feedback = affect::Feedback{ev(rng) / 1000.0,
                                    sign(rng) ? affect::Sign::kPositive : affect::Sign::kNegative};
    }
    script.push_back(std::move(t));
  }
  return script;
}

}  // namespace script_gen

#endif  // AFFECT_TESTS_SCRIPT_GEN_HPP
