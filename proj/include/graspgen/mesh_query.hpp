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

#ifndef GRASPGEN_MESH_QUERY_HPP
#define GRASPGEN_MESH_QUERY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "graspgen/collision.hpp"
#include "graspgen/mesh.hpp"
#include "graspgen/rng.hpp"
#include "graspgen/triangle.hpp"

namespace graspgen {

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void grow(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }

  void grow(const Aabb& other) {
    lo = lo.cwiseMin(other.lo);
    hi = hi.cwiseMax(other.hi);
  }

  Vec3 center() const { return 0.5 * (lo + hi); }

  double distance_sq(const Vec3& p) const {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d = std::max({lo[k] - p[k], 0.0, p[k] - hi[k]});
      d2 += d * d;
    }
    return d2;
  }

  double distance(const Aabb& other) const {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d = std::max({lo[k] - other.hi[k], 0.0, other.lo[k] - hi[k]});
      d2 += d * d;
    }
    return std::sqrt(d2);
  }

  /// Entry parameter of ray origin+t*dir through the box, or nullopt.
  std::optional<double> ray_entry(const Vec3& origin, const Vec3& inv_dir, double t_max) const {
    double t0 = 0.0;
    double t1 = t_max;
    for (int k = 0; k < 3; ++k) {
      const double ta = (lo[k] - origin[k]) * inv_dir[k];
      const double tb = (hi[k] - origin[k]) * inv_dir[k];
      t0 = std::max(t0, std::min(ta, tb));
      t1 = std::min(t1, std::max(ta, tb));
      if (t0 > t1) {
        return std::nullopt;
      }
    }
    return t0;
  }
};

struct SurfaceHit {
  double t = 0.0;
  int triangle = -1;
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::Zero();  // geometric face normal (outward for CCW meshes)
};

struct ClosestPoint {
  double distance = std::numeric_limits<double>::infinity();
  int triangle = -1;
  Vec3 point = Vec3::Zero();
};

struct SignedDistanceResult {
  double distance = 0.0;  // signed when sign_valid, unsigned magnitude otherwise
  bool sign_valid = false;
  int triangle = -1;
  Vec3 closest = Vec3::Zero();
};

/// Acceleration structure over one mesh: AABB tree plus angle-weighted
/// pseudonormals for inside/outside classification of watertight meshes.
class MeshQuery {
 public:
  explicit MeshQuery(TriangleMesh mesh) : mesh_(std::move(mesh)) {
    build_tree();
    build_pseudonormals();
    build_area_table();
  }

  const TriangleMesh& mesh() const { return mesh_; }

  Aabb bounds() const { return nodes_.empty() ? Aabb{} : nodes_[0].box; }

  ClosestPoint closest_point(const Vec3& p) const {
    ClosestPoint best;
    double best_sq = std::numeric_limits<double>::infinity();
    closest_recurse(0, p, best, best_sq);
    return best;
  }

  double unsigned_distance(const Vec3& p) const { return closest_point(p).distance; }

  /// Signed distance: negative inside. Requires a watertight mesh for a valid
  /// sign; otherwise the magnitude is returned with sign_valid = false.
  SignedDistanceResult signed_distance(const Vec3& p) const {
    const ClosestPoint cp = closest_point(p);
    SignedDistanceResult out;
    out.triangle = cp.triangle;
    out.closest = cp.point;
    out.distance = cp.distance;
    if (!mesh_.watertight) {
      return out;
    }
    out.sign_valid = true;
    const Vec3 pseudo = feature_pseudonormal(cp.triangle, cp.point);
    if ((p - cp.point).dot(pseudo) < 0.0) {
      out.distance = -out.distance;
    }
    return out;
  }

  /// Signed distance as a scalar; throws when the sign would be meaningless.
  double signed_distance_checked(const Vec3& p) const {
    if (!mesh_.watertight) {
      throw MeshError("signed distance requested on a non-watertight mesh");
    }
    return signed_distance(p).distance;
  }

  std::optional<SurfaceHit> raycast(const Vec3& origin, const Vec3& dir, double t_min = 0.0,
                                    double t_max = std::numeric_limits<double>::infinity()) const {
    std::optional<SurfaceHit> best;
    const Vec3 inv = safe_inverse(dir);
    raycast_recurse(0, origin, dir, inv, t_min, t_max, best);
    return best;
  }

  /// All intersections along a ray sorted by t (duplicate-t hits at shared
  /// edges are collapsed).
  std::vector<SurfaceHit> ray_all_hits(const Vec3& origin, const Vec3& dir, double t_min = 0.0,
                                       double t_max = std::numeric_limits<double>::infinity()) const {
    std::vector<SurfaceHit> hits;
    const Vec3 inv = safe_inverse(dir);
    ray_all_recurse(0, origin, dir, inv, t_min, t_max, hits);
    std::sort(hits.begin(), hits.end(), [](const SurfaceHit& a, const SurfaceHit& b) { return a.t < b.t; });
    std::vector<SurfaceHit> unique;
    for (const auto& h : hits) {
      if (unique.empty() || h.t - unique.back().t > 1e-10) {
        unique.push_back(h);
      }
    }
    return unique;
  }

  /// Indices of triangles overlapping an oriented box grown by `margin`.
  std::vector<int> triangles_in_box(const OrientedBox& box, double margin = 0.0) const {
    std::vector<int> out;
    const Pose to_box = box.pose.inverse();
    const Vec3 half = box.half_extents + Vec3::Constant(margin);
    box_recurse(0, box, to_box, half, out);
    return out;
  }

  bool intersects_box(const OrientedBox& box, double margin = 0.0) const {
    const Pose to_box = box.pose.inverse();
    const Vec3 half = box.half_extents + Vec3::Constant(margin);
    return box_any_recurse(0, box, to_box, half);
  }

  /// Area-weighted uniform surface sample.
  SurfaceHit sample_surface(RandomStream& rng) const {
    const double target = rng.uniform() * area_cumulative_.back();
    const auto it = std::upper_bound(area_cumulative_.begin(), area_cumulative_.end(), target);
    int tri = static_cast<int>(std::distance(area_cumulative_.begin(), it));
    tri = std::min<int>(tri, static_cast<int>(mesh_.triangles.size()) - 1);
    const auto p = mesh_.triangle_points(tri);
    const double r1 = std::sqrt(rng.uniform());
    const double r2 = rng.uniform();
    SurfaceHit out;
    out.triangle = tri;
    out.point = (1.0 - r1) * p[0] + r1 * (1.0 - r2) * p[1] + r1 * r2 * p[2];
    out.normal = mesh_.triangle_normal(tri);
    return out;
  }

  /// Minimum surface-to-surface distance to another mesh, with early exit
  /// once a pair below `cutoff` is found (the returned value is then that
  /// pair's distance, not the global minimum).
  double distance_to(const MeshQuery& other, const Pose& other_to_this, double cutoff) const {
    double best = std::numeric_limits<double>::infinity();
    pair_recurse(*this, 0, other, 0, other_to_this, cutoff, best);
    return best;
  }

 private:
  struct Node {
    Aabb box;
    int left = -1;
    int right = -1;
    int first = 0;
    int count = 0;  // leaf when count > 0
  };

  static Vec3 safe_inverse(const Vec3& dir) {
    Vec3 inv;
    for (int k = 0; k < 3; ++k) {
      inv[k] = std::abs(dir[k]) > 1e-300 ? 1.0 / dir[k] : std::copysign(1e300, dir[k]);
    }
    return inv;
  }

  Aabb triangle_box(int tri) const {
    Aabb box;
    for (const auto& v : mesh_.triangle_points(tri)) {
      box.grow(v);
    }
    return box;
  }

  void build_tree() {
    const int n = static_cast<int>(mesh_.triangles.size());
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    centroids_.resize(n);
    for (int i = 0; i < n; ++i) {
      const auto p = mesh_.triangle_points(i);
      centroids_[i] = (p[0] + p[1] + p[2]) / 3.0;
    }
    nodes_.reserve(2 * n);
    build_node(0, n);
    centroids_.clear();
  }

  int build_node(int first, int count) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    Aabb box;
    for (int i = first; i < first + count; ++i) {
      box.grow(triangle_box(order_[i]));
    }
    nodes_[index].box = box;
    if (count <= 4) {
      nodes_[index].first = first;
      nodes_[index].count = count;
      return index;
    }
    Aabb cbox;
    for (int i = first; i < first + count; ++i) {
      cbox.grow(centroids_[order_[i]]);
    }
    int axis = 0;
    (cbox.hi - cbox.lo).maxCoeff(&axis);
    const int mid = first + count / 2;
    std::nth_element(order_.begin() + first, order_.begin() + mid, order_.begin() + first + count,
                     [&](int a, int b) { return centroids_[a][axis] < centroids_[b][axis]; });
    const int left = build_node(first, mid - first);
    const int right = build_node(mid, first + count - mid);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
  }

  void build_pseudonormals() {
    if (!mesh_.watertight) {
      return;
    }
    vertex_normals_.assign(mesh_.vertices.size(), Vec3::Zero());
    for (std::size_t t = 0; t < mesh_.triangles.size(); ++t) {
      const auto& tri = mesh_.triangles[t];
      const auto p = mesh_.triangle_points(static_cast<int>(t));
      const Vec3 n = mesh_.triangle_normal(static_cast<int>(t));
      for (int k = 0; k < 3; ++k) {
        const Vec3 e1 = (p[(k + 1) % 3] - p[k]).normalized();
        const Vec3 e2 = (p[(k + 2) % 3] - p[k]).normalized();
        const double angle = std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
        vertex_normals_[tri[k]] += angle * n;
      }
      for (int k = 0; k < 3; ++k) {
        const int a = tri[k];
        const int b = tri[(k + 1) % 3];
        edge_normals_[{std::min(a, b), std::max(a, b)}] += n;
      }
    }
  }

  void build_area_table() {
    area_cumulative_.resize(mesh_.triangles.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < mesh_.triangles.size(); ++i) {
      acc += mesh_.triangle_area(static_cast<int>(i));
      area_cumulative_[i] = acc;
    }
  }

  /// Pseudonormal of the feature (face, edge, or vertex) that `point` lies on.
  Vec3 feature_pseudonormal(int tri, const Vec3& point) const {
    const auto& t = mesh_.triangles[tri];
    const auto p = mesh_.triangle_points(tri);
    // Barycentric coordinates of the closest point.
    const Vec3 v0 = p[1] - p[0];
    const Vec3 v1 = p[2] - p[0];
    const Vec3 v2 = point - p[0];
    const double d00 = v0.dot(v0);
    const double d01 = v0.dot(v1);
    const double d11 = v1.dot(v1);
    const double d20 = v2.dot(v0);
    const double d21 = v2.dot(v1);
    const double denom = d00 * d11 - d01 * d01;
    double v = 0.0;
    double w = 0.0;
    if (std::abs(denom) > 1e-30) {
      v = (d11 * d20 - d01 * d21) / denom;
      w = (d00 * d21 - d01 * d20) / denom;
    }
    const double u = 1.0 - v - w;
    const double scale = std::sqrt(std::max(d00, d11));
    const double eps = scale > 0 ? 1e-9 : 0.0;

    const std::array<double, 3> bary = {u, v, w};
    int zero_count = 0;
    std::array<bool, 3> is_zero{};
    for (int k = 0; k < 3; ++k) {
      is_zero[k] = bary[k] <= eps;
      zero_count += is_zero[k] ? 1 : 0;
    }
    if (zero_count == 0) {
      return mesh_.triangle_normal(tri);
    }
    if (zero_count >= 2) {
      for (int k = 0; k < 3; ++k) {
        if (!is_zero[k]) {
          return vertex_normals_[t[k]];
        }
      }
      return mesh_.triangle_normal(tri);
    }
    // One zero barycentric: closest point is on the edge opposite that vertex.
    for (int k = 0; k < 3; ++k) {
      if (is_zero[k]) {
        const int a = t[(k + 1) % 3];
        const int b = t[(k + 2) % 3];
        const auto it = edge_normals_.find({std::min(a, b), std::max(a, b)});
        if (it != edge_normals_.end()) {
          return it->second;
        }
      }
    }
    return mesh_.triangle_normal(tri);
  }

  void closest_recurse(int node_index, const Vec3& p, ClosestPoint& best, double& best_sq) const {
    const Node& node = nodes_[node_index];
    if (node.box.distance_sq(p) >= best_sq) {
      return;
    }
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri = order_[i];
        const auto tp = mesh_.triangle_points(tri);
        const Vec3 c = closest_point_on_triangle(p, tp[0], tp[1], tp[2]);
        const double d2 = (p - c).squaredNorm();
        if (d2 < best_sq) {
          best_sq = d2;
          best.distance = std::sqrt(d2);
          best.triangle = tri;
          best.point = c;
        }
      }
      return;
    }
    const double dl = nodes_[node.left].box.distance_sq(p);
    const double dr = nodes_[node.right].box.distance_sq(p);
    if (dl < dr) {
      closest_recurse(node.left, p, best, best_sq);
      closest_recurse(node.right, p, best, best_sq);
    } else {
      closest_recurse(node.right, p, best, best_sq);
      closest_recurse(node.left, p, best, best_sq);
    }
  }

  void raycast_recurse(int node_index, const Vec3& origin, const Vec3& dir, const Vec3& inv,
                       double t_min, double t_max, std::optional<SurfaceHit>& best) const {
    const Node& node = nodes_[node_index];
    const double limit = best ? best->t : t_max;
    const auto entry = node.box.ray_entry(origin, inv, limit);
    if (!entry) {
      return;
    }
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri = order_[i];
        const auto tp = mesh_.triangle_points(tri);
        const auto hit = ray_triangle(origin, dir, tp[0], tp[1], tp[2], t_min);
        if (hit && hit->t <= limit && (!best || hit->t < best->t)) {
          best = SurfaceHit{hit->t, tri, origin + hit->t * dir, mesh_.triangle_normal(tri)};
        }
      }
      return;
    }
    raycast_recurse(node.left, origin, dir, inv, t_min, t_max, best);
    raycast_recurse(node.right, origin, dir, inv, t_min, t_max, best);
  }

  void ray_all_recurse(int node_index, const Vec3& origin, const Vec3& dir, const Vec3& inv,
                       double t_min, double t_max, std::vector<SurfaceHit>& hits) const {
    const Node& node = nodes_[node_index];
    if (!node.box.ray_entry(origin, inv, t_max)) {
      return;
    }
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri = order_[i];
        const auto tp = mesh_.triangle_points(tri);
        const auto hit = ray_triangle(origin, dir, tp[0], tp[1], tp[2], t_min);
        if (hit && hit->t <= t_max) {
          hits.push_back(SurfaceHit{hit->t, tri, origin + hit->t * dir, mesh_.triangle_normal(tri)});
        }
      }
      return;
    }
    ray_all_recurse(node.left, origin, dir, inv, t_min, t_max, hits);
    ray_all_recurse(node.right, origin, dir, inv, t_min, t_max, hits);
  }

  bool node_box_overlap(const Node& node, const OrientedBox& box, double inflate) const {
    // Conservative: distance between the node AABB and the box's enclosing AABB.
    Aabb obb_box;
    for (const auto& c : box.corners()) {
      obb_box.grow(c);
    }
    obb_box.lo -= Vec3::Constant(inflate);
    obb_box.hi += Vec3::Constant(inflate);
    return node.box.distance(obb_box) <= 0.0;
  }

  void box_recurse(int node_index, const OrientedBox& box, const Pose& to_box, const Vec3& half,
                   std::vector<int>& out) const {
    const Node& node = nodes_[node_index];
    if (!node_box_overlap(node, box, half.maxCoeff() - box.half_extents.minCoeff())) {
      return;
    }
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri = order_[i];
        const auto tp = mesh_.triangle_points(tri);
        const std::array<Vec3, 3> local = {to_box.apply(tp[0]), to_box.apply(tp[1]), to_box.apply(tp[2])};
        if (triangle_box_overlap(local, half)) {
          out.push_back(tri);
        }
      }
      return;
    }
    box_recurse(node.left, box, to_box, half, out);
    box_recurse(node.right, box, to_box, half, out);
  }

  bool box_any_recurse(int node_index, const OrientedBox& box, const Pose& to_box, const Vec3& half) const {
    const Node& node = nodes_[node_index];
    if (!node_box_overlap(node, box, half.maxCoeff() - box.half_extents.minCoeff())) {
      return false;
    }
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri = order_[i];
        const auto tp = mesh_.triangle_points(tri);
        const std::array<Vec3, 3> local = {to_box.apply(tp[0]), to_box.apply(tp[1]), to_box.apply(tp[2])};
        if (triangle_box_overlap(local, half)) {
          return true;
        }
      }
      return false;
    }
    return box_any_recurse(node.left, box, to_box, half) || box_any_recurse(node.right, box, to_box, half);
  }

  static Aabb transformed_aabb(const Aabb& box, const Pose& pose) {
    Aabb out;
    for (int sx : {0, 1}) {
      for (int sy : {0, 1}) {
        for (int sz : {0, 1}) {
          const Vec3 corner(sx ? box.hi.x() : box.lo.x(), sy ? box.hi.y() : box.lo.y(),
                            sz ? box.hi.z() : box.lo.z());
          out.grow(pose.apply(corner));
        }
      }
    }
    return out;
  }

  static void pair_recurse(const MeshQuery& ma, int ia, const MeshQuery& mb, int ib,
                           const Pose& b_to_a, double cutoff, double& best) {
    if (best < cutoff || best == 0.0) {
      return;  // early exit: answer already decided for the caller's predicate
    }
    const Node& na = ma.nodes_[ia];
    const Node& nb = mb.nodes_[ib];
    const Aabb nb_in_a = transformed_aabb(nb.box, b_to_a);
    if (na.box.distance(nb_in_a) >= best) {
      return;
    }
    if (na.count > 0 && nb.count > 0) {
      for (int i = na.first; i < na.first + na.count; ++i) {
        const auto ta = ma.mesh_.triangle_points(ma.order_[i]);
        for (int j = nb.first; j < nb.first + nb.count; ++j) {
          auto tb = mb.mesh_.triangle_points(mb.order_[j]);
          for (auto& v : tb) {
            v = b_to_a.apply(v);
          }
          best = std::min(best, triangle_triangle_distance(ta, tb));
          if (best < cutoff || best == 0.0) {
            return;
          }
        }
      }
      return;
    }
    // Descend the larger non-leaf node.
    const bool split_a = nb.count > 0 || (na.count == 0 && volume(na.box) >= volume(nb_in_a));
    if (split_a) {
      pair_recurse(ma, na.left, mb, ib, b_to_a, cutoff, best);
      pair_recurse(ma, na.right, mb, ib, b_to_a, cutoff, best);
    } else {
      pair_recurse(ma, ia, mb, nb.left, b_to_a, cutoff, best);
      pair_recurse(ma, ia, mb, nb.right, b_to_a, cutoff, best);
    }
  }

  static double volume(const Aabb& box) {
    const Vec3 d = box.hi - box.lo;
    return std::max(0.0, d.x()) * std::max(0.0, d.y()) * std::max(0.0, d.z());
  }

  TriangleMesh mesh_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
  std::vector<Vec3> centroids_;
  std::vector<Vec3> vertex_normals_;
  std::map<std::pair<int, int>, Vec3> edge_normals_;
  std::vector<double> area_cumulative_;
};

/// True when the posed meshes come within `clearance` of each other, touch,
/// or one contains the other.
inline bool mesh_intersects(const MeshQuery& a, const Pose& pose_a, const MeshQuery& b,
                            const Pose& pose_b, double clearance = 0.0) {
  const Pose b_to_a = pose_a.inverse() * pose_b;
  const double d = a.distance_to(b, b_to_a, clearance);
  if (d < clearance || d == 0.0) {
    return true;
  }
  // Surfaces are apart; check containment through a representative vertex.
  if (a.mesh().watertight && !b.mesh().vertices.empty()) {
    if (a.signed_distance(b_to_a.apply(b.mesh().vertices.front())).distance < 0.0) {
      return true;
    }
  }
  if (b.mesh().watertight) {
    const Pose a_to_b = pose_b.inverse() * pose_a;
    if (b.signed_distance(a_to_b.apply(a.mesh().vertices.front())).distance < 0.0) {
      return true;
    }
  }
  return false;
}

inline bool mesh_intersects(const TriangleMesh& a, const Pose& pose_a, const TriangleMesh& b,
                            const Pose& pose_b, double clearance = 0.0) {
  return mesh_intersects(MeshQuery(a), pose_a, MeshQuery(b), pose_b, clearance);
}

}  // namespace graspgen

#endif  // GRASPGEN_MESH_QUERY_HPP
