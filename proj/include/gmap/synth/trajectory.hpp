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
#include <string_view>
#include <vector>

#include "gmap/geom/pose.hpp"
#include "gmap/synth/scene.hpp"

namespace gmap::synth {

enum class TrajectoryKind { arc, lissajous };

TrajectoryKind trajectory_kind_from_string(std::string_view s);

// Smooth seeded camera path through the scene's central flight region,
// looking along a blend of the path tangent and the room center. Consecutive
// poses stay within 5 cm translation and 5 degrees rotation.
std::vector<geom::Pose> gen_trajectory(const Scene& scene, TrajectoryKind kind, int n_frames,
                                       std::uint64_t seed);

}  // namespace gmap::synth
