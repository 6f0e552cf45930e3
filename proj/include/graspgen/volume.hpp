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

#ifndef GRASPGEN_VOLUME_HPP
#define GRASPGEN_VOLUME_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "graspgen/math.hpp"

namespace graspgen {

/// Dense voxel grid with named scalar channels. Linear index order is
/// x-fastest: i = x + dims.x * (y + dims.y * z).
struct VoxelVolume {
  Vec3 origin = Vec3::Zero();
  double voxel_size = 0.0;
  std::array<int, 3> dims = {0, 0, 0};
  std::map<std::string, std::vector<float>> channels;

  VoxelVolume() = default;
  VoxelVolume(const Vec3& origin_, double voxel_size_, const std::array<int, 3>& dims_)
      : origin(origin_), voxel_size(voxel_size_), dims(dims_) {
    if (voxel_size <= 0.0 || dims[0] < 1 || dims[1] < 1 || dims[2] < 1) {
      throw std::invalid_argument("VoxelVolume: voxel_size must be > 0 and dims >= 1");
    }
  }

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }

  std::vector<float>& add_channel(const std::string& name, float fill = 0.0f) {
    auto& data = channels[name];
    data.assign(voxel_count(), fill);
    return data;
  }

  bool in_bounds(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < dims[0] && y < dims[1] && z < dims[2];
  }

  std::size_t linear_index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) + static_cast<std::size_t>(dims[0]) * (y + static_cast<std::size_t>(dims[1]) * z);
  }

  Vec3 voxel_center(int x, int y, int z) const {
    return origin + voxel_size * Vec3(x + 0.5, y + 0.5, z + 0.5);
  }

  /// Voxel containing a point, or {-1,-1,-1} when outside the grid.
  std::array<int, 3> voxel_of(const Vec3& p) const {
    std::array<int, 3> idx{};
    for (int k = 0; k < 3; ++k) {
      idx[k] = static_cast<int>(std::floor((p[k] - origin[k]) / voxel_size));
    }
    if (!in_bounds(idx[0], idx[1], idx[2])) {
      return {-1, -1, -1};
    }
    return idx;
  }

  bool same_layout(const VoxelVolume& other) const {
    return dims == other.dims && voxel_size == other.voxel_size &&
           (origin - other.origin).norm() == 0.0;
  }
};

}  // namespace graspgen

#endif  // GRASPGEN_VOLUME_HPP
