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

#ifndef GRASPGEN_TESTS_TEST_SUPPORT_HPP
#define GRASPGEN_TESTS_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <string>

#include "graspgen/mesh.hpp"
#include "graspgen/triangle.hpp"

namespace graspgen::test {

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("graspgen-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

/// Brute-force unsigned distance: exhaustive scan over every triangle.
/// Kept free of the BVH path on purpose.
inline double brute_force_distance(const TriangleMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto tp = mesh.triangle_points(static_cast<int>(i));
    best = std::min(best, (closest_point_on_triangle(p, tp[0], tp[1], tp[2]) - p).norm());
  }
  return best;
}

/// Brute-force inside test by ray-crossing parity, majority over several
/// fixed directions to dodge edge-grazing rays.
inline bool brute_force_inside(const TriangleMesh& mesh, const Vec3& p) {
  const Vec3 dirs[5] = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1),
                        Vec3(0.577350269, 0.577350269, 0.577350269),
                        Vec3(-0.267261242, 0.534522484, 0.801783726)};
  int votes = 0;
  for (const auto& d : dirs) {
    int crossings = 0;
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
      const auto tp = mesh.triangle_points(static_cast<int>(i));
      if (ray_triangle(p, d.normalized(), tp[0], tp[1], tp[2], 1e-12)) {
        ++crossings;
      }
    }
    votes += (crossings % 2 == 1) ? 1 : 0;
  }
  return votes >= 3;
}

}  // namespace graspgen::test

#endif  // GRASPGEN_TESTS_TEST_SUPPORT_HPP
