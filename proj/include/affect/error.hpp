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

#ifndef AFFECT_ERROR_HPP
#define AFFECT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace affect {

enum class ErrorCode {
  kMissingSlot,
  kUnexpectedSlot,
  kUnknownEventType,
  kUnknownEmotion,
  kRowSumOutOfTolerance,
  kNegativeProbability,
  kProbabilityOutOfRange,
  kInvalidPseudoCount,
  kDuplicateProposition,
  kType4Rejected,
  kMalformedRule,
  kNotEnabled,
  kCyclicNet,
  kUnknownGoal,
  kNoMatchingRule,
  kZeroMu,
  kInvalidConfig,
  kParse,
  kFeedbackWithoutEvent,
  kUnknownSession,
};

std::string_view error_code_name(ErrorCode code);

// Every engine failure is reported as an Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace affect

#endif  // AFFECT_ERROR_HPP
