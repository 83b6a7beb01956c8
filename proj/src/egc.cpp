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

#include "affect/egc.hpp"

#include <string>

namespace affect {

std::string_view octant_name(Octant o) {
  switch (o) {
    case Octant::I: return "I";
    case Octant::II: return "II";
    case Octant::III: return "III";
    case Octant::IV: return "IV";
    case Octant::V: return "V";
    case Octant::VI: return "VI";
    case Octant::VII: return "VII";
    case Octant::VIII: return "VIII";
    case Octant::kOnAxis: return "OnAxis";
  }
  return "?";
}

int pleasure_sign(Octant o) {
  switch (o) {
    case Octant::I:
    case Octant::III:
    case Octant::VI:
    case Octant::VIII:
      return 1;
    case Octant::II:
    case Octant::IV:
    case Octant::V:
    case Octant::VII:
      return -1;
    case Octant::kOnAxis:
      return 0;
  }
  return 0;
}

std::string describe(const AxisFormula& f) {
  const std::string role(slot_role_name(f.role));
  switch (f.kind) {
    case AxisFormula::Kind::kFv: return "f_" + role;
    case AxisFormula::Kind::kDifference:
      return "f_" + role + "-f_" + std::string(slot_role_name(f.minus));
    case AxisFormula::Kind::kMagnitude: return "|f_" + role + "|";
    case AxisFormula::Kind::kDummy: return "beta";
  }
  return "?";
}

namespace {

using K = AxisFormula::Kind;
using R = SlotRole;

constexpr AxisFormula fv(R role) { return {K::kFv, role, role}; }
constexpr AxisFormula diff(R a, R b) { return {K::kDifference, a, b}; }
constexpr AxisFormula mag(R role) { return {K::kMagnitude, role, role}; }
constexpr AxisFormula dummy() { return {K::kDummy, R::S, R::S}; }

}  // namespace

std::vector<AxisAssignment> assign_axes(EventType type) {
  switch (type) {
    case EventType::V_S:
    case EventType::A_S_C:
    case EventType::A_S_OF_C:
    case EventType::A_S_OT_C:
    case EventType::A_S_OM_C:
    case EventType::A_S_OS_C:
      return {{fv(R::S), dummy(), fv(R::P)}};
    case EventType::V_S_OF:
    case EventType::V_S_OT:
      return {{fv(R::S), diff(R::OT, R::OF), fv(R::P)}};
    case EventType::V_S_OM:
      return {{fv(R::S), fv(R::OM), fv(R::P)}};
    case EventType::V_S_OS:
      return {{diff(R::S, R::OS), dummy(), fv(R::P)}};
    case EventType::V_S_O:
      return {{fv(R::S), fv(R::O), fv(R::P)}, {fv(R::O), dummy(), fv(R::P)}};
    case EventType::V_S_O_OF:
    case EventType::V_S_O_OT:
      return {{fv(R::O), diff(R::OT, R::OF), fv(R::P)}};
    case EventType::V_S_O_OM:
      return {{fv(R::O), fv(R::OM), fv(R::P)}};
    case EventType::V_S_O_I:
      return {{fv(R::O), mag(R::I), fv(R::P)}};
    case EventType::V_S_O_OC:
      return {{fv(R::O), dummy(), fv(R::OC)}};
    case EventType::A_S_O_C:
      return {{fv(R::O), dummy(), fv(R::P)}};
  }
  throw Error(ErrorCode::kUnknownEventType, "unknown event type");
}

namespace {

double operand(const SlotValues& fvs, R role, double missing) {
  auto it = fvs.find(role);
  return it == fvs.end() ? missing : it->second;
}

double evaluate_axis(const AxisFormula& f, const SlotValues& fvs,
                     const EgcConfig& config) {
  const double beta = config.dummy_value;
  switch (f.kind) {
    case K::kFv: return operand(fvs, f.role, beta);
    case K::kMagnitude: return std::abs(operand(fvs, f.role, beta));
    case K::kDummy: return beta;
    case K::kDifference: {
      const double missing = config.dummy_in_difference ? beta : 0.0;
      return operand(fvs, f.role, missing) - operand(fvs, f.minus, missing);
    }
  }
  return beta;
}

}  // namespace

SyntheticVector<double> evaluate_axes(const AxisAssignment& axes,
                                      const SlotValues& fvs,
                                      const EgcConfig& config) {
  return {evaluate_axis(axes.f1, fvs, config),
          evaluate_axis(axes.f2, fvs, config),
          evaluate_axis(axes.f3, fvs, config)};
}

ResolvedSlots resolve_slots(const CaseFrame& cf, const FavoriteValueDB& db,
                            std::string_view person) {
  ResolvedSlots out;
  for (const auto& [role, word] : cf.slots) {
    out[role] = {word, db.lookup(person, word)};
  }
  return out;
}

EmotionResult egc_from_values(EventType type, const SlotValues& fvs,
                              const EgcConfig& config) {
  EmotionResult result;
  for (const auto& axes : assign_axes(type)) {
    EmotionVector ev;
    ev.f = evaluate_axes(axes, fvs, config);
    ev.octant = octant_of(ev.f, config.on_axis_tolerance);
    ev.magnitude = ev.f.norm();
    ev.signed_value = signed_emotion_value(ev.f, config.on_axis_tolerance);
    result.vectors.push_back(ev);
  }
  for (const auto& v : result.vectors) {
    result.signed_value += v.signed_value;
    result.raw_magnitude += v.magnitude;
  }
  const auto n = static_cast<double>(result.vectors.size());
  result.signed_value /= n;
  result.raw_magnitude /= n;
  return result;
}

EmotionResult egc_eval(const CaseFrame& cf, const FavoriteValueDB& db,
                       std::string_view person, const EgcConfig& config) {
  const EventType type = require_valid(cf);
  SlotValues fvs;
  for (const auto& [role, slot] : resolve_slots(cf, db, person)) {
    fvs[role] = slot.fv.effective();
  }
  return egc_from_values(type, fvs, config);
}

}  // namespace affect
