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

#include "gmap/geom/camera.hpp"
#include "gmap/geom/pose.hpp"
#include "gmap/io/ppm.hpp"
#include "gmap/synth/scene.hpp"

namespace gmap::synth {

// Per-pixel raycast with flat shading plus a Lambert term from one fixed
// directional light; fully deterministic. The pose must be inside the room
// and outside every primitive.
io::Image render(const Scene& scene, const geom::Pose& pose,
                 const geom::CameraIntrinsics& intrinsics);

}  // namespace gmap::synth
