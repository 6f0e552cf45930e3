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

#ifndef GRASPGEN_MATH_HPP
#define GRASPGEN_MATH_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace graspgen {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

/// Rigid transform: x_world = rotation * x_local + translation. Units: meters.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Pose Identity() { return Pose{}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 rotate(const Vec3& d) const { return rotation * d; }

  Pose inverse() const {
    Pose inv;
    inv.rotation = rotation.transpose();
    inv.translation = -(inv.rotation * translation);
    return inv;
  }

  /// Composition: (a * b).apply(x) == a.apply(b.apply(x)).
  Pose operator*(const Pose& other) const {
    Pose out;
    out.rotation = rotation * other.rotation;
    out.translation = rotation * other.translation + translation;
    return out;
  }
};

inline Pose make_pose(const Mat3& r, const Vec3& t) { return Pose{r, t}; }

inline Pose translation_pose(const Vec3& t) { return Pose{Mat3::Identity(), t}; }

/// Max absolute deviation of R^T R from identity plus the det-from-one error.
inline double rotation_error(const Mat3& r) {
  const Mat3 gram = r.transpose() * r - Mat3::Identity();
  return std::max(gram.cwiseAbs().maxCoeff(), std::abs(r.determinant() - 1.0));
}

inline bool is_rotation(const Mat3& r, double tol = 1e-9) {
  return r.allFinite() && rotation_error(r) <= tol;
}

inline bool is_valid_pose(const Pose& pose, double tol = 1e-9) {
  return is_rotation(pose.rotation, tol) && pose.translation.allFinite();
}

inline void check_pose(const Pose& pose, double tol = 1e-9) {
  if (!is_valid_pose(pose, tol)) {
    throw std::invalid_argument("pose is not a rigid transform");
  }
}

inline Mat3 axis_angle_rotation(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), 0, v.x();
  return m;
}

/// Deterministic orthonormal tangent basis (t1, t2) with n x t1 = t2 for a
/// unit vector n. The reference axis switches away from near-parallel inputs.
inline std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
  const Vec3 ref = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  Vec3 t1 = ref.cross(n).normalized();
  Vec3 t2 = n.cross(t1);
  return {t1, t2};
}

/// Camera/world pose looking from eye toward target, +z along the view ray.
inline Pose look_at_pose(const Vec3& eye, const Vec3& target, const Vec3& up = Vec3::UnitZ()) {
  const Vec3 z = (target - eye).normalized();
  Vec3 x = z.cross(up);
  if (x.norm() < 1e-9) {
    x = z.cross(Vec3::UnitY());
  }
  x.normalize();
  const Vec3 y = z.cross(x);
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return Pose{r, eye};
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace graspgen

#endif  // GRASPGEN_MATH_HPP
