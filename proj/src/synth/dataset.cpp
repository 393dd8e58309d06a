/*
 * Copyright 2026 the gmap authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gmap/synth/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace gmap::synth {

geom::NormStats norm_stats_from_trajectory(const std::vector<geom::Pose>& trajectory) {
  if (trajectory.empty()) {
    throw std::invalid_argument("norm_stats_from_trajectory: empty trajectory");
  }
  geom::Vec3 lo = trajectory.front().translation;
  geom::Vec3 hi = lo;
  for (const auto& p : trajectory) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p.translation[i]);
      hi[i] = std::max(hi[i], p.translation[i]);
    }
  }
  geom::NormStats stats;
  for (int i = 0; i < 3; ++i) {
    stats.center[i] = 0.5 * (lo[i] + hi[i]);
    stats.half_extent[i] = std::max(0.5 * (hi[i] - lo[i]), 0.05);
  }
  return stats;
}

io::DatasetManifest make_dataset(const Scene& scene, const std::vector<geom::Pose>& trajectory,
                                 const geom::CameraIntrinsics& intrinsics,
                                 const std::filesystem::path& out_dir) {
  if (trajectory.empty()) throw std::invalid_argument("make_dataset: empty trajectory");
  intrinsics.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("make_dataset: cannot create " + out_dir.string() + ": " +
                             ec.message());
  }

  io::DatasetManifest m;
  m.scene_seed = scene.seed;
  m.intrinsics = intrinsics;
  m.stats = norm_stats_from_trajectory(trajectory);
  m.frames.reserve(trajectory.size());

  char name[64];
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    std::snprintf(name, sizeof(name), "frame_%05zu.ppm", i);
    io::write_ppm(out_dir / name, render(scene, trajectory[i], intrinsics));
    m.frames.push_back({static_cast<int>(i), trajectory[i], name});
  }
  io::save_manifest(io::manifest_path(out_dir), m);
  return m;
}

}  // namespace gmap::synth
