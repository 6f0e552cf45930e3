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

#ifndef GRASPGEN_PRIMITIVES_HPP
#define GRASPGEN_PRIMITIVES_HPP

#include "graspgen/mesh.hpp"

namespace graspgen {

/// Axis-aligned box mesh centered at the origin. All primitives here are
/// watertight with outward CCW winding.
inline TriangleMesh make_box(const Vec3& size) {
  const Vec3 h = 0.5 * size;
  TriangleMesh mesh;
  mesh.vertices = {
      {-h.x(), -h.y(), -h.z()}, {h.x(), -h.y(), -h.z()}, {h.x(), h.y(), -h.z()}, {-h.x(), h.y(), -h.z()},
      {-h.x(), -h.y(), h.z()},  {h.x(), -h.y(), h.z()},  {h.x(), h.y(), h.z()},  {-h.x(), h.y(), h.z()}};
  mesh.triangles = {{0, 2, 1}, {0, 3, 2},   // bottom (-z)
                    {4, 5, 6}, {4, 6, 7},   // top (+z)
                    {0, 1, 5}, {0, 5, 4},   // front (-y)
                    {2, 3, 7}, {2, 7, 6},   // back (+y)
                    {1, 2, 6}, {1, 6, 5},   // right (+x)
                    {3, 0, 4}, {3, 4, 7}};  // left (-x)
  return finalize_mesh(std::move(mesh), "box");
}

inline TriangleMesh make_unit_cube() { return make_box(Vec3::Ones()); }

/// Closed cylinder with axis +z, centered at the origin.
inline TriangleMesh make_cylinder(double radius, double height, int segments = 64) {
  TriangleMesh mesh;
  const double hz = 0.5 * height;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    const double x = radius * std::cos(a);
    const double y = radius * std::sin(a);
    mesh.vertices.emplace_back(x, y, -hz);
    mesh.vertices.emplace_back(x, y, hz);
  }
  const int bottom_center = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0, 0, -hz);
  const int top_center = bottom_center + 1;
  mesh.vertices.emplace_back(0, 0, hz);
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    const int b0 = 2 * i;
    const int t0 = 2 * i + 1;
    const int b1 = 2 * j;
    const int t1 = 2 * j + 1;
    mesh.triangles.push_back({b0, b1, t1});
    mesh.triangles.push_back({b0, t1, t0});
    mesh.triangles.push_back({bottom_center, b1, b0});
    mesh.triangles.push_back({top_center, t0, t1});
  }
  return finalize_mesh(std::move(mesh), "cylinder");
}

/// Latitude/longitude sphere with vertices exactly at both poles (+-z).
inline TriangleMesh make_uv_sphere(double radius, int rings = 24, int segments = 48) {
  TriangleMesh mesh;
  const int north = 0;
  mesh.vertices.emplace_back(0, 0, radius);
  for (int r = 1; r < rings; ++r) {
    const double theta = kPi * r / rings;
    const double z = radius * std::cos(theta);
    const double s = radius * std::sin(theta);
    for (int i = 0; i < segments; ++i) {
      const double phi = 2.0 * kPi * i / segments;
      mesh.vertices.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
    }
  }
  const int south = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0, 0, -radius);

  auto ring_vertex = [&](int r, int i) { return 1 + (r - 1) * segments + (i % segments); };
  for (int i = 0; i < segments; ++i) {
    mesh.triangles.push_back({north, ring_vertex(1, i), ring_vertex(1, i + 1)});
  }
  for (int r = 1; r + 1 < rings; ++r) {
    for (int i = 0; i < segments; ++i) {
      const int a = ring_vertex(r, i);
      const int b = ring_vertex(r, i + 1);
      const int c = ring_vertex(r + 1, i);
      const int d = ring_vertex(r + 1, i + 1);
      mesh.triangles.push_back({a, d, b});
      mesh.triangles.push_back({a, c, d});
    }
  }
  for (int i = 0; i < segments; ++i) {
    mesh.triangles.push_back({south, ring_vertex(rings - 1, i + 1), ring_vertex(rings - 1, i)});
  }
  return finalize_mesh(std::move(mesh), "sphere");
}

}  // namespace graspgen

#endif  // GRASPGEN_PRIMITIVES_HPP
