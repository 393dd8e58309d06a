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

#include <stdexcept>

namespace gmap::geom {

// Pinhole camera. The camera frame is right-handed with +z forward, +y up in
// the image; rays fan out by the vertical field of view, scaled by aspect
// horizontally.
struct CameraIntrinsics {
  double fov_v_deg = 60.0;
  int height = 32;
  int width = 32;

  void validate() const {
    if (!(fov_v_deg > 20.0 && fov_v_deg < 120.0)) {
      throw std::invalid_argument("CameraIntrinsics: fov must lie in (20, 120) degrees");
    }
    if (height <= 0 || width <= 0) {
      throw std::invalid_argument("CameraIntrinsics: resolution must be positive");
    }
  }
};

}  // namespace gmap::geom
