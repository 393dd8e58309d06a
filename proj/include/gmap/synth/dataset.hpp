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

#include <filesystem>
#include <vector>

#include "gmap/io/manifest.hpp"
#include "gmap/synth/render.hpp"
#include "gmap/synth/trajectory.hpp"

namespace gmap::synth {

// Normalization statistics from a trajectory's translation bounding box,
// with a floor on the half extents so degenerate paths stay well-posed.
geom::NormStats norm_stats_from_trajectory(const std::vector<geom::Pose>& trajectory);

// Renders every pose into out_dir (frame_%05d.ppm) and writes manifest.txt.
io::DatasetManifest make_dataset(const Scene& scene, const std::vector<geom::Pose>& trajectory,
                                 const geom::CameraIntrinsics& intrinsics,
                                 const std::filesystem::path& out_dir);

}  // namespace gmap::synth
