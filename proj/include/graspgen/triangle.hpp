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

#ifndef GRASPGEN_TRIANGLE_HPP
#define GRASPGEN_TRIANGLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "graspgen/math.hpp"

namespace graspgen {

/// Closest point on triangle (a, b, c) to p. Ericson's region method.
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) {
    return a;
  }

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) {
    return b;
  }

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return a + v * ab;
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) {
    return c;
  }

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return a + w * ac;
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + w * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return a + ab * v + ac * w;
}

struct RayHit {
  double t = 0.0;  // distance along the (unit) ray direction
  double u = 0.0;  // barycentric of the second vertex
  double v = 0.0;  // barycentric of the third vertex
};

/// Moeller-Trumbore. Returns the hit with t >= t_min, or nullopt.
inline std::optional<RayHit> ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                          const Vec3& b, const Vec3& c, double t_min = 0.0) {
  constexpr double kEps = 1e-13;
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (std::abs(det) < kEps) {
    return std::nullopt;
  }
  const double inv_det = 1.0 / det;
  const Vec3 tvec = origin - a;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < -1e-12 || u > 1.0 + 1e-12) {
    return std::nullopt;
  }
  const Vec3 qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv_det;
  if (v < -1e-12 || u + v > 1.0 + 1e-12) {
    return std::nullopt;
  }
  const double t = e2.dot(qvec) * inv_det;
  if (t < t_min) {
    return std::nullopt;
  }
  return RayHit{t, u, v};
}

/// Closest points between segments p1+s*d1 (s in [0,1]) and p2+t*d2.
inline double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = q1 - p1;
  const Vec3 d2 = q2 - p2;
  const Vec3 r = p1 - p2;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  constexpr double kEps = 1e-16;
  if (a <= kEps && e <= kEps) {
    return r.norm();
  }
  if (a <= kEps) {
    t = clamp01(f / e);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = clamp01(-c / a);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom > kEps) {
        s = clamp01((b * f - c * e) / denom);
      }
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = clamp01(-c / a);
      } else if (t > 1.0) {
        t = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  return ((p1 + d1 * s) - (p2 + d2 * t)).norm();
}

/// Does segment [p, q] pass through triangle (a, b, c)?
inline bool segment_intersects_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                                        const Vec3& c) {
  const Vec3 d = q - p;
  const double len = d.norm();
  if (len < 1e-16) {
    return false;
  }
  const auto hit = ray_triangle(p, d / len, a, b, c, 0.0);
  return hit && hit->t <= len + 1e-12;
}

/// Distance between triangles; exactly zero when they touch or cross.
inline double triangle_triangle_distance(const std::array<Vec3, 3>& t1, const std::array<Vec3, 3>& t2) {
  for (int i = 0; i < 3; ++i) {
    if (segment_intersects_triangle(t1[i], t1[(i + 1) % 3], t2[0], t2[1], t2[2]) ||
        segment_intersects_triangle(t2[i], t2[(i + 1) % 3], t1[0], t1[1], t1[2])) {
      return 0.0;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    best = std::min(best, (closest_point_on_triangle(t1[i], t2[0], t2[1], t2[2]) - t1[i]).norm());
    best = std::min(best, (closest_point_on_triangle(t2[i], t1[0], t1[1], t1[2]) - t2[i]).norm());
    for (int j = 0; j < 3; ++j) {
      best = std::min(best, segment_segment_distance(t1[i], t1[(i + 1) % 3], t2[j], t2[(j + 1) % 3]));
    }
  }
  return best;
}

/// Separating-axis overlap test between a triangle and an axis-aligned box
/// centered at the origin with half extents h. Akenine-Moeller's 13 axes.
inline bool triangle_box_overlap(const std::array<Vec3, 3>& tri, const Vec3& h) {
  const Vec3& v0 = tri[0];
  const Vec3& v1 = tri[1];
  const Vec3& v2 = tri[2];

  auto axis_test = [&](const Vec3& axis) {
    const double p0 = axis.dot(v0);
    const double p1 = axis.dot(v1);
    const double p2 = axis.dot(v2);
    const double r = h.x() * std::abs(axis.x()) + h.y() * std::abs(axis.y()) + h.z() * std::abs(axis.z());
    const double mn = std::min({p0, p1, p2});
    const double mx = std::max({p0, p1, p2});
    return !(mn > r || mx < -r);
  };

  // Box face normals.
  for (int k = 0; k < 3; ++k) {
    const double mn = std::min({v0[k], v1[k], v2[k]});
    const double mx = std::max({v0[k], v1[k], v2[k]});
    if (mn > h[k] || mx < -h[k]) {
      return false;
    }
  }
  // Triangle normal.
  const Vec3 e0 = v1 - v0;
  const Vec3 e1 = v2 - v1;
  const Vec3 e2 = v0 - v2;
  if (!axis_test(e0.cross(e1))) {
    return false;
  }
  // Edge cross products.
  const std::array<Vec3, 3> edges = {e0, e1, e2};
  const std::array<Vec3, 3> units = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  for (const auto& e : edges) {
    for (const auto& u : units) {
      const Vec3 axis = u.cross(e);
      if (axis.squaredNorm() > 1e-20 && !axis_test(axis)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace graspgen

#endif  // GRASPGEN_TRIANGLE_HPP
