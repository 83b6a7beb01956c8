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

// JSON forms of the engine's records. Readers reject unknown fields and
// throw Error(kParse) with a message naming the offending field.

#ifndef AFFECT_SERIALIZATION_HPP
#define AFFECT_SERIALIZATION_HPP

#include <json.hpp>

#include "affect/session.hpp"

namespace affect {

using Json = nlohmann::json;

Json to_json(const CaseFrame& cf);
CaseFrame case_frame_from_json(const Json& j);

Json to_json(const ElicitingContext& ctx);
ElicitingContext context_from_json(const Json& j);

Json to_json(const FavoriteValue& fv);
FavoriteValue favorite_value_from_json(const Json& j);

Json to_json(const EmotionResult& r);
EmotionResult emotion_result_from_json(const Json& j);

Json to_json(const LearningReport& r);
LearningReport learning_report_from_json(const Json& j);

Json to_json(const Feedback& f);
Feedback feedback_from_json(const Json& j);

Json to_json(const TurnRecord& t);
TurnRecord turn_record_from_json(const Json& j);

Json to_json(const ScriptTurn& t);
ScriptTurn script_turn_from_json(const Json& j);

}  // namespace affect

#endif  // AFFECT_SERIALIZATION_HPP
