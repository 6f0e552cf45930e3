/*
 * Copyright 2026 graspgen authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRASPGEN_COLLISION_HPP
#define GRASPGEN_COLLISION_HPP

#include <array>

#include "graspgen/math.hpp"

namespace graspgen {

/// Oriented box: local frame axes = pose.rotation columns, half extents in
/// that frame.
struct OrientedBox {
  Pose pose;
  Vec3 half_extents = Vec3::Zero();

  std::array<Vec3, 8> corners() const {
    std::array<Vec3, 8> out;
    int i = 0;
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        for (int sz : {-1, 1}) {
          out[i++] = pose.apply(Vec3(sx * half_extents.x(), sy * half_extents.y(), sz * half_extents.z()));
        }
      }
    }
    return out;
  }

  bool contains(const Vec3& p, double tol = 0.0) const {
    const Vec3 local = pose.inverse().apply(p);
    return (local.cwiseAbs() - half_extents).maxCoeff() <= tol;
  }

  /// Lowest corner height above the z = 0 half-space (negative = below).
  double min_z() const {
    double z = std::numeric_limits<double>::infinity();
    for (const auto& c : corners()) {
      z = std::min(z, c.z());
    }
    return z;
  }
};

/// True when the box dips below z = clearance (table modeled as z <= 0).
inline bool box_touches_table(const OrientedBox& box, double clearance = 0.0) {
  return box.min_z() < clearance;
}

}  // namespace graspgen

#endif  // GRASPGEN_COLLISION_HPP
