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

#ifndef AFFECT_EMOTION_HPP
#define AFFECT_EMOTION_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "affect/error.hpp"

namespace affect {

inline constexpr int kEmotionGroupCount = 9;

// The 28 emotion names, each in exactly one of nine groups.
enum class Emotion {
  // group 1
  kGloating, kHope, kSatisfaction, kRelief, kPride, kAdmiration, kLiking,
  kGratitude, kGratification, kLove, kShy,
  // group 2
  kJoy, kHappyFor,
  // group 3
  kSorryFor, kShame, kRemorse,
  // group 4
  kFearsConfirmed, kDisappointment, kSadness,
  // group 5
  kDistress, kPerplexity,
  // group 6
  kDisliking, kHate,
  // group 7
  kResentment, kReproach, kAnger,
  // group 8
  kFear,
  // group 9
  kSurprise,
};

inline constexpr int kEmotionCount = 28;

std::span<const Emotion> all_emotions();
std::string_view emotion_name(Emotion e);
// Accepts snake_case or hyphenated spellings ("happy-for", "fear-confirmed").
std::optional<Emotion> parse_emotion(std::string_view name);
// Throws Error(kUnknownEmotion).
Emotion emotion_from_name(std::string_view name);

// Group number 1..9.
int group_of(Emotion e);
int group_of(std::string_view name);

enum class Target { kSelf, kOther };
enum class OtherFortune { kNone, kGood, kBad };
enum class Temporal { kNone, kProspect, kConfirmed, kDisconfirmed };
enum class Agency { kNone, kSelfAct, kOtherAct };
enum class Approval { kNone, kApprove, kDisapprove };

struct ElicitingContext {
  Target target = Target::kSelf;
  OtherFortune other_fortune = OtherFortune::kNone;
  Temporal temporal = Temporal::kNone;
  Agency agency = Agency::kNone;
  Approval approval = Approval::kNone;

  friend bool operator==(const ElicitingContext&,
                         const ElicitingContext&) = default;
};

std::string_view to_string(Target v);
std::string_view to_string(OtherFortune v);
std::string_view to_string(Temporal v);
std::string_view to_string(Agency v);
std::string_view to_string(Approval v);

struct ElicitedEmotion {
  Emotion emotion;
  double strength;

  friend bool operator==(const ElicitedEmotion&,
                         const ElicitedEmotion&) = default;
};

// One row of the decision table. Unset conditions match anything; the first
// matching row decides the labels for a positive or negative value.
struct DecisionRow {
  std::optional<Target> target;
  std::optional<OtherFortune> other_fortune;
  std::optional<Temporal> temporal;
  std::optional<Agency> agency;
  std::optional<Approval> approval;
  std::vector<Emotion> positive;
  std::vector<Emotion> negative;

  bool matches(const ElicitingContext& ctx) const;
};

class DecisionTable {
 public:
  DecisionTable() = default;
  explicit DecisionTable(std::vector<DecisionRow> rows);

  // The table shipped as data/decision_table.json.
  static const DecisionTable& builtin();
  static std::string_view builtin_json();

  // {"rows": [{"when": {...}, "positive": [...], "negative": [...]}]}
  static DecisionTable from_json(std::string_view text);
  static DecisionTable load(const std::string& path);

  const std::vector<DecisionRow>& rows() const { return rows_; }

 private:
  std::vector<DecisionRow> rows_;
};

// Strength of every emitted label is |value|; zero yields nothing.
std::vector<ElicitedEmotion> classify(
    double value, const ElicitingContext& ctx,
    const DecisionTable& table = DecisionTable::builtin());

using GroupStrengthVector = Eigen::Matrix<double, kEmotionGroupCount, 1>;

// e_k = max strength among emotions of group k, 0 when absent. Index k-1.
GroupStrengthVector group_strengths(std::span<const ElicitedEmotion> emotions);

}  // namespace affect

#endif  // AFFECT_EMOTION_HPP
