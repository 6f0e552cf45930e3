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

#ifndef GRASPGEN_MESH_HPP
#define GRASPGEN_MESH_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "graspgen/math.hpp"

namespace graspgen {

class MeshError : public std::runtime_error {
 public:
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// Indexed triangle soup in meters. `watertight` is true when every edge is
/// shared by exactly two consistently wound triangles; only then do signed
/// distances carry a valid sign.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  bool watertight = false;

  Vec3 triangle_vertex(int tri, int corner) const { return vertices[triangles[tri][corner]]; }

  std::array<Vec3, 3> triangle_points(int tri) const {
    const auto& t = triangles[tri];
    return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
  }

  Vec3 triangle_normal(int tri) const {
    const auto p = triangle_points(tri);
    return (p[1] - p[0]).cross(p[2] - p[0]).normalized();
  }

  double triangle_area(int tri) const {
    const auto p = triangle_points(tri);
    return 0.5 * (p[1] - p[0]).cross(p[2] - p[0]).norm();
  }

  double surface_area() const {
    double area = 0.0;
    for (std::size_t i = 0; i < triangles.size(); ++i) {
      area += triangle_area(static_cast<int>(i));
    }
    return area;
  }

  std::pair<Vec3, Vec3> bounding_box() const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (const auto& v : vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    return {lo, hi};
  }

  /// Area centroid of the surface; rotation center for quasi-static settling.
  Vec3 area_centroid() const {
    Vec3 acc = Vec3::Zero();
    double area = 0.0;
    for (std::size_t i = 0; i < triangles.size(); ++i) {
      const auto p = triangle_points(static_cast<int>(i));
      const double a = triangle_area(static_cast<int>(i));
      acc += a * (p[0] + p[1] + p[2]) / 3.0;
      area += a;
    }
    return area > 0 ? Vec3(acc / area) : Vec3::Zero();
  }

  /// Volume centroid via the divergence theorem. Valid for watertight meshes;
  /// falls back to the area centroid otherwise.
  Vec3 volume_centroid() const {
    if (!watertight) {
      return area_centroid();
    }
    double volume = 0.0;
    Vec3 acc = Vec3::Zero();
    for (std::size_t i = 0; i < triangles.size(); ++i) {
      const auto p = triangle_points(static_cast<int>(i));
      const double v6 = p[0].dot(p[1].cross(p[2]));
      volume += v6;
      acc += v6 * (p[0] + p[1] + p[2]);
    }
    if (std::abs(volume) < 1e-15) {
      return area_centroid();
    }
    return acc / (4.0 * volume);
  }
};

namespace detail {

inline bool check_watertight(const TriangleMesh& mesh) {
  // Closed orientable 2-manifold: every directed edge has exactly one
  // opposite-direction twin and no duplicates.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      if (++directed[{a, b}] > 1) {
        return false;
      }
    }
  }
  for (const auto& [edge, count] : directed) {
    auto twin = directed.find({edge.second, edge.first});
    if (twin == directed.end() || twin->second != 1) {
      return false;
    }
  }
  return !mesh.triangles.empty();
}

inline void validate_and_finalize(TriangleMesh& mesh, const std::string& origin) {
  if (mesh.vertices.empty() || mesh.triangles.empty()) {
    throw MeshError(origin + ": empty mesh");
  }
  for (const auto& v : mesh.vertices) {
    if (!v.allFinite()) {
      throw MeshError(origin + ": non-finite vertex coordinates");
    }
  }
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<std::array<int, 3>> kept;
  kept.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    for (int idx : t) {
      if (idx < 0 || idx >= n) {
        throw MeshError(origin + ": triangle index out of range");
      }
    }
    const Vec3 a = mesh.vertices[t[0]];
    const Vec3 cr = (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a);
    if (0.5 * cr.norm() > 1e-14) {
      kept.push_back(t);  // drop degenerate (zero-area) faces
    }
  }
  if (kept.empty()) {
    throw MeshError(origin + ": all triangles degenerate");
  }
  mesh.triangles = std::move(kept);
  mesh.watertight = check_watertight(mesh);
}

inline TriangleMesh parse_obj(std::istream& in, const std::string& origin) {
  TriangleMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    if (line.size() >= 2 && line[0] == 'v' && (line[1] == ' ' || line[1] == '\t')) {
      std::istringstream ls(line.substr(2));
      Vec3 v;
      if (!(ls >> v.x() >> v.y() >> v.z())) {
        throw MeshError(origin + ": malformed vertex line");
      }
      mesh.vertices.push_back(v);
    } else if (line.size() >= 2 && line[0] == 'f' && (line[1] == ' ' || line[1] == '\t')) {
      std::istringstream ls(line.substr(2));
      std::vector<int> face;
      std::string tok;
      while (ls >> tok) {
        // "v", "v/vt", "v//vn", "v/vt/vn"; negative indices are relative.
        const std::size_t slash = tok.find('/');
        const std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        int idx = 0;
        try {
          idx = std::stoi(head);
        } catch (const std::exception&) {
          throw MeshError(origin + ": malformed face token '" + tok + "'");
        }
        if (idx < 0) {
          idx = static_cast<int>(mesh.vertices.size()) + idx;
        } else {
          idx -= 1;
        }
        face.push_back(idx);
      }
      if (face.size() < 3) {
        throw MeshError(origin + ": face with fewer than 3 vertices");
      }
      for (std::size_t k = 1; k + 1 < face.size(); ++k) {
        mesh.triangles.push_back({face[0], face[k], face[k + 1]});
      }
    }
  }
  return mesh;
}

inline TriangleMesh parse_stl(std::istream& in, const std::string& origin) {
  // Sniff ASCII vs binary: binary has an 80-byte header then a u32 count.
  std::vector<char> content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto add_vertex = [](TriangleMesh& mesh, std::map<std::array<double, 3>, int>& index, const Vec3& v) {
    const std::array<double, 3> key = {v.x(), v.y(), v.z()};
    auto it = index.find(key);
    if (it != index.end()) {
      return it->second;
    }
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(v);
    index.emplace(key, id);
    return id;
  };

  std::string head(content.data(), std::min<std::size_t>(content.size(), 5));
  bool ascii = head == "solid";
  if (ascii) {
    // A binary file may still start with "solid"; verify the size equation.
    if (content.size() >= 84) {
      std::uint32_t count = 0;
      std::memcpy(&count, content.data() + 80, 4);
      if (84 + static_cast<std::size_t>(count) * 50 == content.size()) {
        ascii = false;
      }
    }
  }

  TriangleMesh mesh;
  std::map<std::array<double, 3>, int> index;
  if (ascii) {
    std::istringstream ls(std::string(content.begin(), content.end()));
    std::string tok;
    std::vector<Vec3> tri;
    while (ls >> tok) {
      if (tok == "vertex") {
        Vec3 v;
        if (!(ls >> v.x() >> v.y() >> v.z())) {
          throw MeshError(origin + ": malformed STL vertex");
        }
        tri.push_back(v);
        if (tri.size() == 3) {
          mesh.triangles.push_back({add_vertex(mesh, index, tri[0]), add_vertex(mesh, index, tri[1]),
                                    add_vertex(mesh, index, tri[2])});
          tri.clear();
        }
      }
    }
    if (!tri.empty()) {
      throw MeshError(origin + ": truncated STL facet");
    }
  } else {
    if (content.size() < 84) {
      throw MeshError(origin + ": binary STL too short");
    }
    std::uint32_t count = 0;
    std::memcpy(&count, content.data() + 80, 4);
    if (84 + static_cast<std::size_t>(count) * 50 > content.size()) {
      throw MeshError(origin + ": binary STL truncated");
    }
    const char* p = content.data() + 84;
    for (std::uint32_t i = 0; i < count; ++i, p += 50) {
      float values[12];
      std::memcpy(values, p, 48);
      std::array<int, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        const Vec3 v(values[3 + 3 * k], values[4 + 3 * k], values[5 + 3 * k]);
        tri[k] = add_vertex(mesh, index, v);
      }
      mesh.triangles.push_back(tri);
    }
  }
  return mesh;
}

}  // namespace detail

/// Loads an OBJ or STL file and scales coordinates to meters. `scale` is the
/// multiplier applied to file units (0.001 for millimeter assets).
inline TriangleMesh load_mesh(const std::filesystem::path& path, double scale = 1.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw MeshError("load_mesh: scale must be positive and finite");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MeshError("load_mesh: cannot open " + path.string());
  }
  std::string ext = path.extension().string();
  for (auto& ch : ext) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  TriangleMesh mesh;
  if (ext == ".obj") {
    mesh = detail::parse_obj(in, path.string());
  } else if (ext == ".stl") {
    mesh = detail::parse_stl(in, path.string());
  } else {
    throw MeshError("load_mesh: unsupported format '" + ext + "' (expected .obj or .stl)");
  }
  if (scale != 1.0) {
    for (auto& v : mesh.vertices) {
      v *= scale;
    }
  }
  detail::validate_and_finalize(mesh, path.string());
  return mesh;
}

/// Validates an in-memory mesh the same way load_mesh does.
inline TriangleMesh finalize_mesh(TriangleMesh mesh, const std::string& name = "mesh") {
  detail::validate_and_finalize(mesh, name);
  return mesh;
}

inline void save_obj(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw MeshError("save_obj: cannot open " + path.string());
  }
  out.precision(17);
  for (const auto& v : mesh.vertices) {
    out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  }
  if (!out) {
    throw MeshError("save_obj: write failed for " + path.string());
  }
}

inline TriangleMesh transformed(const TriangleMesh& mesh, const Pose& pose) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) {
    v = pose.apply(v);
  }
  return out;
}

}  // namespace graspgen

#endif  // GRASPGEN_MESH_HPP
