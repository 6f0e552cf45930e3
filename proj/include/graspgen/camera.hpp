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

#ifndef GRASPGEN_CAMERA_HPP
#define GRASPGEN_CAMERA_HPP

#include <vector>

#include "graspgen/mesh_query.hpp"
#include "graspgen/parallel.hpp"
#include "graspgen/rng.hpp"

namespace graspgen {

/// Pinhole camera. pose maps camera frame to world; +z is the optical axis,
/// +x right, +y down (image convention).
struct CameraModel {
  Pose pose;
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  bool valid() const {
    return fx > 0.0 && fy > 0.0 && width >= 1 && height >= 1 && is_valid_pose(pose);
  }

  /// Unit ray direction in camera frame through pixel center (u, v).
  Vec3 pixel_ray(int u, int v) const {
    return Vec3((u + 0.5 - cx) / fx, (v + 0.5 - cy) / fy, 1.0).normalized();
  }
};

/// Depth along the optical axis per pixel; values <= 0 mark invalid pixels.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> depth;

  static constexpr float kInvalid = -1.0f;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), depth(static_cast<std::size_t>(w) * h, kInvalid) {}

  float& at(int u, int v) { return depth[static_cast<std::size_t>(v) * width + u]; }
  float at(int u, int v) const { return depth[static_cast<std::size_t>(v) * width + u]; }
  bool valid_at(int u, int v) const { return at(u, v) > 0.0f; }
};

struct RenderObject {
  const MeshQuery* query = nullptr;
  Pose pose;
};

/// Ray-cast depth rendering. `noise_sigma` adds per-pixel Gaussian depth
/// noise (meters) seeded deterministically; zero means noiseless.
inline DepthImage render_depth(const std::vector<RenderObject>& scene, const CameraModel& camera,
                               double noise_sigma = 0.0, std::uint64_t noise_seed = 0, int jobs = 1) {
  if (!camera.valid()) {
    throw std::invalid_argument("render_depth: invalid camera");
  }
  DepthImage image(camera.width, camera.height);
  std::vector<Pose> to_object;
  to_object.reserve(scene.size());
  for (const auto& obj : scene) {
    to_object.push_back(obj.pose.inverse());
  }
  parallel_for(static_cast<std::size_t>(camera.height), jobs, [&](std::size_t row) {
    const int v = static_cast<int>(row);
    for (int u = 0; u < camera.width; ++u) {
      const Vec3 dir_cam = camera.pixel_ray(u, v);
      const Vec3 origin = camera.pose.translation;
      const Vec3 dir = camera.pose.rotate(dir_cam);
      double best_t = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < scene.size(); ++i) {
        const Vec3 o_local = to_object[i].apply(origin);
        const Vec3 d_local = to_object[i].rotate(dir);
        const auto hit = scene[i].query->raycast(o_local, d_local, 1e-9, best_t);
        if (hit && hit->t < best_t) {
          best_t = hit->t;
        }
      }
      if (std::isfinite(best_t)) {
        double depth = best_t * dir_cam.z();  // ray length -> optical-axis depth
        if (noise_sigma > 0.0) {
          RandomStream rng(noise_seed, static_cast<std::uint64_t>(v) * camera.width + u);
          depth += rng.normal(0.0, noise_sigma);
        }
        image.at(u, v) = static_cast<float>(std::max(depth, 1e-6));
      }
    }
  });
  return image;
}

}  // namespace graspgen

#endif  // GRASPGEN_CAMERA_HPP
