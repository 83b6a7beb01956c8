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

// Emotion generating calculations: a case-frame event becomes one or two
// points (f1, f2, f3) in a three-dimensional emotion space; the sign pattern
// of each point decides pleasure or displeasure and its length the degree.

#ifndef AFFECT_EGC_HPP
#define AFFECT_EGC_HPP

#include <cmath>
#include <map>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "affect/core_model.hpp"

namespace affect {

template <typename Scalar>
using SyntheticVector = Eigen::Matrix<Scalar, 3, 1>;

// Filler used for an axis the event type does not provide.
inline constexpr double kDummyFavoriteValue = 0.5;

// Components with |f| below this are treated as lying on an axis.
inline constexpr double kOnAxisTolerance = 1e-12;

enum class Octant { I, II, III, IV, V, VI, VII, VIII, kOnAxis };

std::string_view octant_name(Octant o);

// +1 for pleasure, -1 for displeasure, 0 on an axis.
int pleasure_sign(Octant o);

// Sign-pattern lookup:
//   I +++  II -++  III --+  IV +-+  V ++-  VI -+-  VII ---  VIII +--
template <typename Derived>
Octant octant_of(const Eigen::MatrixBase<Derived>& v,
                 typename Derived::Scalar tol = kOnAxisTolerance) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
  using std::abs;
  if ((v.array().abs() < tol).any()) return Octant::kOnAxis;
  const bool p1 = v(0) > 0, p2 = v(1) > 0, p3 = v(2) > 0;
  if (p3) {
    if (p1 && p2) return Octant::I;
    if (!p1 && p2) return Octant::II;
    if (!p1 && !p2) return Octant::III;
    return Octant::IV;
  }
  if (p1 && p2) return Octant::V;
  if (!p1 && p2) return Octant::VI;
  if (!p1 && !p2) return Octant::VII;
  return Octant::VIII;
}

// sign(octant) * |v| / sqrt(3); zero on an axis. Bounded by 1 when every
// component is.
template <typename Derived>
typename Derived::Scalar signed_emotion_value(
    const Eigen::MatrixBase<Derived>& v,
    typename Derived::Scalar tol = kOnAxisTolerance) {
  using Scalar = typename Derived::Scalar;
  const int sign = pleasure_sign(octant_of(v, tol));
  if (sign == 0) return Scalar(0);
  return Scalar(sign) * v.norm() / std::sqrt(Scalar(3));
}

// One axis of a row: fv(role), fv(a) - fv(b), |fv(role)| or the dummy value.
struct AxisFormula {
  enum class Kind { kFv, kDifference, kMagnitude, kDummy };
  Kind kind = Kind::kDummy;
  SlotRole role = SlotRole::S;
  SlotRole minus = SlotRole::S;  // subtrahend for kDifference

  friend bool operator==(const AxisFormula&, const AxisFormula&) = default;
};

struct AxisAssignment {
  AxisFormula f1, f2, f3;

  friend bool operator==(const AxisAssignment&, const AxisAssignment&) = default;
};

std::string describe(const AxisFormula& f);

struct EgcConfig {
  double dummy_value = kDummyFavoriteValue;
  // Operand used for a missing role inside a difference axis
  // (V(S,OF)/V(S,OT) rows): the dummy value, or zero.
  bool dummy_in_difference = true;
  double on_axis_tolerance = kOnAxisTolerance;
};

// Rows matching the event type; V(S,O) yields two.
std::vector<AxisAssignment> assign_axes(EventType type);

using SlotValues = std::map<SlotRole, double>;

// Evaluates an assignment over resolved slot values.
SyntheticVector<double> evaluate_axes(const AxisAssignment& axes,
                                      const SlotValues& fvs,
                                      const EgcConfig& config = {});

struct EmotionVector {
  SyntheticVector<double> f = SyntheticVector<double>::Zero();
  Octant octant = Octant::kOnAxis;
  double magnitude = 0.0;
  double signed_value = 0.0;
};

struct EmotionResult {
  std::vector<EmotionVector> vectors;
  // Mean over vectors.
  double signed_value = 0.0;
  double raw_magnitude = 0.0;
};

struct ResolvedSlot {
  std::string word;
  FavoriteValue fv;
};

using ResolvedSlots = std::map<SlotRole, ResolvedSlot>;

ResolvedSlots resolve_slots(const CaseFrame& cf, const FavoriteValueDB& db,
                            std::string_view person);

EmotionResult egc_from_values(EventType type, const SlotValues& fvs,
                              const EgcConfig& config = {});

EmotionResult egc_eval(const CaseFrame& cf, const FavoriteValueDB& db,
                       std::string_view person,
                       const EgcConfig& config = {});

}  // namespace affect

#endif  // AFFECT_EGC_HPP
