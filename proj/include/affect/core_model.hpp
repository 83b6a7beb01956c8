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

// Shared domain vocabulary: favorite values, case frames and the persistent
// favorite-value database.

#ifndef AFFECT_CORE_MODEL_HPP
#define AFFECT_CORE_MODEL_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "affect/error.hpp"

namespace affect {

// Value read for a word that has never been assigned a favorite value.
inline constexpr double kUnknownFavoriteValue = 0.5;

inline constexpr std::string_view kDefaultPersona = "default";

struct FavoriteValue {
  double value = kUnknownFavoriteValue;
  bool known = false;

  static FavoriteValue unknown() { return {kUnknownFavoriteValue, false}; }

  // The value used by every calculation; unknown entries read as +0.5.
  double effective() const { return known ? value : kUnknownFavoriteValue; }

  friend bool operator==(const FavoriteValue&, const FavoriteValue&) = default;
};

double clamp_favorite(double v);

// ASCII case folding; words are otherwise used verbatim as keys.
std::string normalize_word(std::string_view word);

enum class FvLayer { kInitial, kPersonal };

// Two-layer word -> favorite value store. Lookup never fails: personal,
// then initial, then the unknown value.
class FavoriteValueDB {
 public:
  FavoriteValue lookup(std::string_view person, std::string_view word) const;

  void set_initial(std::string_view word, FavoriteValue fv);
  void set_personal(std::string_view person, std::string_view word,
                    FavoriteValue fv);

  const std::map<std::string, FavoriteValue>& initial() const {
    return initial_;
  }
  const std::map<std::pair<std::string, std::string>, FavoriteValue>&
  personal() const {
    return personal_;
  }

  bool empty() const { return initial_.empty() && personal_.empty(); }

  friend bool operator==(const FavoriteValueDB&,
                         const FavoriteValueDB&) = default;

 private:
  std::map<std::string, FavoriteValue> initial_;
  // Keyed by (person, word).
  std::map<std::pair<std::string, std::string>, FavoriteValue> personal_;
};

inline FavoriteValue lookup_fv(const FavoriteValueDB& db,
                               std::string_view person,
                               std::string_view word) {
  return db.lookup(person, word);
}

// One JSON object per line:
//   {"word": "dog", "value": 0.9, "known": true, "layer": "personal",
//    "person": "alice"}
// "person" is required for the personal layer and forbidden for the initial
// one. Unknown fields are rejected. Errors carry the 1-based line number.
FavoriteValueDB read_fv_db(std::istream& in);
void write_fv_db(std::ostream& out, const FavoriteValueDB& db);
FavoriteValueDB load_fv_db(const std::string& path);
void save_fv_db(const std::string& path, const FavoriteValueDB& db);

// Case-frame roles. P is the predicate word (verb or adjective).
enum class SlotRole { S, O, OF, OT, OM, OS, OC, I, C, P };

inline constexpr std::array<SlotRole, 10> kAllSlotRoles = {
    SlotRole::S,  SlotRole::O,  SlotRole::OF, SlotRole::OT, SlotRole::OM,
    SlotRole::OS, SlotRole::OC, SlotRole::I,  SlotRole::C,  SlotRole::P};

std::string_view slot_role_name(SlotRole role);
std::optional<SlotRole> parse_slot_role(std::string_view name);

enum class PredicateKind { kVerb, kAdjective };

// Event types, one per row label of the event/axis correspondence table.
enum class EventType {
  V_S,
  A_S_C,
  A_S_OF_C,
  A_S_OT_C,
  A_S_OM_C,
  A_S_OS_C,
  V_S_OF,
  V_S_OT,
  V_S_OM,
  V_S_OS,
  V_S_O,
  V_S_O_OF,
  V_S_O_OT,
  V_S_O_OM,
  V_S_O_I,
  V_S_O_OC,
  A_S_O_C,
};

inline constexpr int kEventTypeCount = 17;

std::span<const EventType> all_event_types();
std::string_view event_type_name(EventType type);
std::optional<EventType> parse_event_type(std::string_view name);
PredicateKind predicate_kind(EventType type);
// Roles that must be filled, including P.
std::span<const SlotRole> required_slots(EventType type);

struct CaseFrame {
  // Row label such as "V(S,O)"; resolved by validate_case_frame.
  std::string event_type;
  std::map<SlotRole, std::string> slots;

  bool has(SlotRole role) const { return slots.contains(role); }
  const std::string& word(SlotRole role) const { return slots.at(role); }

  friend bool operator==(const CaseFrame&, const CaseFrame&) = default;
};

struct CaseFrameIssue {
  ErrorCode code;  // kMissingSlot, kUnexpectedSlot or kUnknownEventType
  std::optional<SlotRole> role;

  std::string message() const;
};

// Returns nothing when the slots exactly match the event type's row.
std::optional<CaseFrameIssue> validate_case_frame(const CaseFrame& cf);

// Throws Error on the first issue; returns the resolved event type.
EventType require_valid(const CaseFrame& cf);

}  // namespace affect

#endif  // AFFECT_CORE_MODEL_HPP
