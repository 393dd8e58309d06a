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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gmap/geom/camera.hpp"
#include "gmap/geom/pose.hpp"

namespace gmap::io {

struct FrameEntry {
  int frame_id = 0;
  geom::Pose pose;
  std::string image_path;  // relative to the manifest directory
};

// Ordered dataset description. The text format is line-oriented and
// versioned:
//
//   GMAP_MANIFEST 1
//   seed <u64>
//   intrinsics <fov_v_deg> <height> <width>
//   norm_center <cx> <cy> <cz>
//   norm_half_extent <hx> <hy> <hz>
//   frames <n>
//   <id> <tx> <ty> <tz> <qw> <qx> <qy> <qz> <image path>
//
// Floating-point fields carry 17 significant digits, so poses round-trip
// losslessly.
struct DatasetManifest {
  std::uint64_t scene_seed = 0;
  geom::CameraIntrinsics intrinsics;
  geom::NormStats stats;
  std::vector<FrameEntry> frames;
};

inline std::filesystem::path manifest_path(const std::filesystem::path& dataset_dir) {
  return dataset_dir / "manifest.txt";
}

void save_manifest(const std::filesystem::path& file, const DatasetManifest& manifest);

// Parses and validates: version line, strictly increasing frame ids from 0,
// declared frame count, referenced image existence and resolution (header
// check only). Parse errors carry the offending line number.
DatasetManifest load_manifest(const std::filesystem::path& file);

}  // namespace gmap::io
