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

#ifndef GRASPGEN_TSDF_HPP
#define GRASPGEN_TSDF_HPP

#include <iostream>

#include "graspgen/camera.hpp"
#include "graspgen/volume.hpp"

namespace graspgen {

struct GridParams {
  Vec3 origin = Vec3(-0.15, -0.15, 0.0);
  double voxel_size = 0.30 / 40.0;
  std::array<int, 3> dims = {40, 40, 40};
};

inline const char* kTsdfChannel = "tsdf";
inline const char* kObservedChannel = "observed";

/// Projective TSDF from a single depth image. Voxel value is the
/// along-ray signed distance to the observed surface divided by
/// `truncation`, clamped to [-1, 1]. Voxels with no usable observation get
/// observed = 0 and value -1 (hidden space convention).
inline VoxelVolume integrate_tsdf(const DepthImage& depth, const CameraModel& camera,
                                  const GridParams& grid, double truncation) {
  if (truncation <= grid.voxel_size) {
    throw std::invalid_argument("integrate_tsdf: truncation must exceed voxel_size");
  }
  VoxelVolume volume(grid.origin, grid.voxel_size, grid.dims);
  auto& tsdf = volume.add_channel(kTsdfChannel, -1.0f);
  auto& observed = volume.add_channel(kObservedChannel, 0.0f);

  const Pose world_to_cam = camera.pose.inverse();
  bool any_projected = false;
  for (int z = 0; z < grid.dims[2]; ++z) {
    for (int y = 0; y < grid.dims[1]; ++y) {
      for (int x = 0; x < grid.dims[0]; ++x) {
        const Vec3 pc = world_to_cam.apply(volume.voxel_center(x, y, z));
        if (pc.z() <= 1e-6) {
          continue;  // behind the camera
        }
        const int u = static_cast<int>(std::floor(camera.fx * pc.x() / pc.z() + camera.cx));
        const int v = static_cast<int>(std::floor(camera.fy * pc.y() / pc.z() + camera.cy));
        if (u < 0 || v < 0 || u >= camera.width || v >= camera.height) {
          continue;
        }
        any_projected = true;
        if (!depth.valid_at(u, v)) {
          continue;
        }
        const double measured = depth.at(u, v);
        const double sdf = measured - pc.z();
        if (sdf < -truncation) {
          continue;  // occluded beyond the truncation band
        }
        const std::size_t i = volume.linear_index(x, y, z);
        tsdf[i] = static_cast<float>(std::clamp(sdf / truncation, -1.0, 1.0));
        observed[i] = 1.0f;
      }
    }
  }
  if (!any_projected) {
    std::cerr << "integrate_tsdf: grid entirely outside the camera frustum\n";
  }
  return volume;
}

}  // namespace graspgen

#endif  // GRASPGEN_TSDF_HPP
