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

// Mental state transition network.
//
// Transition counts #(i -> j) are seeded from a probability table scaled by
// a pseudo count. The cost of moving from i to j is 1 - p(i, j), where p is
// the count row normalized to one. Given a group-strength vector e, the next
// state is map(k*) with
//
//   k* = argmax_k  e_k / cost(current, map(k))
//
// and every selected move is counted, so frequent moves get cheaper.

#ifndef AFFECT_MSTN_HPP
#define AFFECT_MSTN_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "affect/emotion.hpp"

namespace affect {

inline constexpr int kMentalStateCount = 7;

enum class MentalState { kHappy, kQuiet, kSad, kSurprise, kAngry, kFear, kDisgust };

std::string_view mental_state_name(MentalState s);
std::optional<MentalState> parse_mental_state(std::string_view name);

inline int index_of(MentalState s) { return static_cast<int>(s); }
inline MentalState state_at(int i) { return static_cast<MentalState>(i); }

template <typename Scalar>
using TransitionMatrix =
    Eigen::Matrix<Scalar, kMentalStateCount, kMentalStateCount, Eigen::RowMajor>;

using ProbabilityTable = TransitionMatrix<double>;

// Published no-stimulus transition probabilities; rows sum to 0.997..0.999.
const ProbabilityTable& default_probability_table();

inline constexpr double kRowSumTolerance = 0.01;
inline constexpr double kDefaultPseudoCount = 1000.0;

// Relative width within which two selection scores count as a tie.
inline constexpr double kScoreTieTolerance = 1e-12;

class TransitionModel {
 public:
  // Throws kNegativeProbability, kProbabilityOutOfRange,
  // kRowSumOutOfTolerance or kInvalidPseudoCount.
  static TransitionModel from_probabilities(
      const ProbabilityTable& probabilities,
      double pseudo_count = kDefaultPseudoCount);

  // Row i of counts must have a positive sum.
  static TransitionModel from_counts(const TransitionMatrix<double>& counts,
                                     MentalState current = MentalState::kQuiet);

  const TransitionMatrix<double>& counts() const { return counts_; }
  MentalState current() const { return current_; }
  void set_current(MentalState s) { current_ = s; }

  double count(MentalState from, MentalState to) const {
    return counts_(index_of(from), index_of(to));
  }
  double row_sum(MentalState from) const { return counts_.row(index_of(from)).sum(); }

  double probability(MentalState from, MentalState to) const;
  Eigen::Matrix<double, 1, kMentalStateCount> probability_row(
      MentalState from) const;

  double cost(MentalState from, MentalState to) const;
  Eigen::Matrix<double, 1, kMentalStateCount> cost_row(MentalState from) const;
  TransitionMatrix<double> cost_matrix() const;

  void record_transition(MentalState from, MentalState to);

  friend bool operator==(const TransitionModel& a, const TransitionModel& b) {
    return a.current_ == b.current_ && a.counts_ == b.counts_;
  }

 private:
  TransitionModel() = default;

  TransitionMatrix<double> counts_ = TransitionMatrix<double>::Zero();
  MentalState current_ = MentalState::kQuiet;
};

inline TransitionModel init_from_table(const ProbabilityTable& probabilities,
                                       double pseudo_count = kDefaultPseudoCount) {
  return TransitionModel::from_probabilities(probabilities, pseudo_count);
}

inline double cost(const TransitionModel& model, MentalState from,
                   MentalState to) {
  return model.cost(from, to);
}

// next(S_cur, k): the state reached by selecting emotion group k.
class GroupStateMap {
 public:
  // 1,2 -> happy; 3,4,5 -> sad; 6 -> disgust; 7 -> angry; 8 -> fear;
  // 9 -> surprise.
  GroupStateMap();
  explicit GroupStateMap(const std::array<MentalState, kEmotionGroupCount>& to);

  // Group number 1..9.
  MentalState operator()(int group) const { return to_.at(group - 1); }
  const std::array<MentalState, kEmotionGroupCount>& targets() const { return to_; }

 private:
  std::array<MentalState, kEmotionGroupCount> to_;
};

struct Selection {
  // 1..9, or empty when no group had positive strength (decay step).
  std::optional<int> group;
  MentalState from = MentalState::kQuiet;
  MentalState to = MentalState::kQuiet;
  // Cost of the move taken, evaluated before it was recorded.
  double cost = 0.0;
  bool decayed = false;
};

// Scores e_k / cost(current, map(k)) for every group with e_k > 0; a zero
// cost scores +infinity. The lowest group wins ties.
std::optional<int> select_group(const TransitionModel& model,
                                const GroupStrengthVector& e,
                                const GroupStateMap& map);

// Picks the group and next state, records the move and makes it current.
// Without any stimulus, moves to the most probable successor of the current
// state (lowest index on ties) without recording it.
Selection select_emotion_and_next(TransitionModel& model,
                                  const GroupStrengthVector& e,
                                  const GroupStateMap& map = GroupStateMap());

// {"states": [...7 names...], "probabilities": [[7 reals] x 7],
//  "pseudo_count": 1000}
// "states" and "pseudo_count" are optional.
struct TransitionTableFile {
  ProbabilityTable probabilities;
  double pseudo_count = kDefaultPseudoCount;
};

TransitionTableFile parse_transition_table(std::string_view json_text);
TransitionTableFile load_transition_table(const std::string& path);
std::string_view default_transition_table_json();

}  // namespace affect

#endif  // AFFECT_MSTN_HPP
