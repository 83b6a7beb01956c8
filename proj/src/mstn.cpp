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

#include "affect/mstn.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "affect/builtin_data.hpp"

namespace affect {

namespace {

constexpr std::array<std::string_view, kMentalStateCount> kStateNames = {
    "happy", "quiet", "sad", "surprise", "angry", "fear", "disgust"};

}  // namespace

std::string_view mental_state_name(MentalState s) {
  return kStateNames[static_cast<std::size_t>(index_of(s))];
}

std::optional<MentalState> parse_mental_state(std::string_view name) {
  for (int i = 0; i < kMentalStateCount; ++i) {
    if (kStateNames[i] == name) return state_at(i);
    if (name == "s" + std::to_string(i + 1)) return state_at(i);
  }
  return std::nullopt;
}

const ProbabilityTable& default_probability_table() {
  static const ProbabilityTable table =
      parse_transition_table(default_transition_table_json()).probabilities;
  return table;
}

TransitionModel TransitionModel::from_probabilities(
    const ProbabilityTable& probabilities, double pseudo_count) {
  if (!(pseudo_count > 0.0) || !std::isfinite(pseudo_count)) {
    throw Error(ErrorCode::kInvalidPseudoCount,
                "pseudo count must be positive");
  }
  for (int i = 0; i < kMentalStateCount; ++i) {
    for (int j = 0; j < kMentalStateCount; ++j) {
      const double p = probabilities(i, j);
      if (p < 0.0) {
        throw Error(ErrorCode::kNegativeProbability,
                    "negative probability at (" + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) + ")");
      }
      if (!(p <= 1.0)) {
        throw Error(ErrorCode::kProbabilityOutOfRange,
                    "probability above 1 at (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")");
      }
    }
    const double sum = probabilities.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::kRowSumOutOfTolerance,
                  "row " + std::to_string(i + 1) + " sums to " +
                      std::to_string(sum));
    }
  }
  TransitionModel model;
  model.counts_ = probabilities * pseudo_count;
  model.current_ = MentalState::kQuiet;
  return model;
}

TransitionModel TransitionModel::from_counts(
    const TransitionMatrix<double>& counts, MentalState current) {
  if ((counts.array() < 0.0).any() || !counts.allFinite()) {
    throw Error(ErrorCode::kNegativeProbability,
                "transition counts must be finite and nonnegative");
  }
  if ((counts.rowwise().sum().array() <= 0.0).any()) {
    throw Error(ErrorCode::kRowSumOutOfTolerance,
                "every count row needs a positive sum");
  }
  TransitionModel model;
  model.counts_ = counts;
  model.current_ = current;
  return model;
}

double TransitionModel::probability(MentalState from, MentalState to) const {
  return count(from, to) / row_sum(from);
}

Eigen::Matrix<double, 1, kMentalStateCount> TransitionModel::probability_row(
    MentalState from) const {
  return counts_.row(index_of(from)) / row_sum(from);
}

double TransitionModel::cost(MentalState from, MentalState to) const {
  return 1.0 - probability(from, to);
}

Eigen::Matrix<double, 1, kMentalStateCount> TransitionModel::cost_row(
    MentalState from) const {
  return (1.0 - probability_row(from).array()).matrix();
}

TransitionMatrix<double> TransitionModel::cost_matrix() const {
  TransitionMatrix<double> out;
  for (int i = 0; i < kMentalStateCount; ++i) out.row(i) = cost_row(state_at(i));
  return out;
}

void TransitionModel::record_transition(MentalState from, MentalState to) {
  counts_(index_of(from), index_of(to)) += 1.0;
}

GroupStateMap::GroupStateMap()
    : to_{MentalState::kHappy, MentalState::kHappy,   MentalState::kSad,
          MentalState::kSad,   MentalState::kSad,     MentalState::kDisgust,
          MentalState::kAngry, MentalState::kFear,    MentalState::kSurprise} {}

GroupStateMap::GroupStateMap(
    const std::array<MentalState, kEmotionGroupCount>& to)
    : to_(to) {}

std::optional<int> select_group(const TransitionModel& model,
                                const GroupStrengthVector& e,
                                const GroupStateMap& map) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::optional<int> best;
  double best_score = 0.0;
  for (int k = 1; k <= kEmotionGroupCount; ++k) {
    const double strength = e(k - 1);
    if (!(strength > 0.0)) continue;
    const double c = model.cost(model.current(), map(k));
    const double score = c > 0.0 ? strength / c : kInf;
    if (!best) {
      best = k;
      best_score = score;
      continue;
    }
    if (std::isinf(best_score)) continue;
    if (std::isinf(score) || score > best_score * (1.0 + kScoreTieTolerance)) {
      best = k;
      best_score = score;
    }
  }
  return best;
}

Selection select_emotion_and_next(TransitionModel& model,
                                  const GroupStrengthVector& e,
                                  const GroupStateMap& map) {
  Selection sel;
  sel.from = model.current();
  sel.group = select_group(model, e, map);
  if (sel.group) {
    sel.to = map(*sel.group);
    sel.cost = model.cost(sel.from, sel.to);
    model.record_transition(sel.from, sel.to);
  } else {
    Eigen::Index next = 0;
    model.probability_row(sel.from).maxCoeff(&next);
    sel.to = state_at(static_cast<int>(next));
    sel.cost = model.cost(sel.from, sel.to);
    sel.decayed = true;
  }
  model.set_current(sel.to);
  return sel;
}

namespace {

using nlohmann::json;

[[noreturn]] void table_error(const std::string& what) {
  throw Error(ErrorCode::kParse, "transition table: " + what);
}

}  // namespace

TransitionTableFile parse_transition_table(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    table_error(e.what());
  }
  if (!doc.is_object()) table_error("expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "states" && key != "probabilities" && key != "pseudo_count") {
      table_error("unknown field '" + key + "'");
    }
  }
  if (doc.contains("states")) {
    const auto& states = doc["states"];
    if (!states.is_array() || states.size() != kMentalStateCount) {
      table_error("'states' must list 7 names");
    }
    for (int i = 0; i < kMentalStateCount; ++i) {
      if (!states[i].is_string() ||
          parse_mental_state(states[i].get<std::string>()) != state_at(i)) {
        table_error("'states' must be happy, quiet, sad, surprise, angry, "
                    "fear, disgust in that order");
      }
    }
  }
  const auto& rows = doc.value("probabilities", json());
  if (!rows.is_array() || rows.size() != kMentalStateCount) {
    table_error("'probabilities' must have 7 rows");
  }
  TransitionTableFile out;
  for (int i = 0; i < kMentalStateCount; ++i) {
    if (!rows[i].is_array() || rows[i].size() != kMentalStateCount) {
      table_error("row " + std::to_string(i + 1) + " must have 7 entries");
    }
    for (int j = 0; j < kMentalStateCount; ++j) {
      if (!rows[i][j].is_number()) table_error("entries must be numbers");
      out.probabilities(i, j) = rows[i][j].get<double>();
    }
  }
  if (doc.contains("pseudo_count")) {
    if (!doc["pseudo_count"].is_number()) table_error("bad pseudo_count");
    out.pseudo_count = doc["pseudo_count"].get<double>();
  }
  // Range and row-sum checks live in TransitionModel::from_probabilities.
  return out;
}

TransitionTableFile load_transition_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) table_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_transition_table(buf.str());
}

std::string_view default_transition_table_json() {
  return builtin_data::kTransitionTableJson;
}

}  // namespace affect
