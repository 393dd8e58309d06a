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

namespace gmap::io {

// Planar CHW image with values in [0, 1].
struct Image {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  std::size_t size() const { return data.size(); }
  double& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
};

// Binary PPM (P6), 8-bit, maxval 255. Values are clamped to [0, 1] and
// rounded to the nearest of 256 levels, so a round trip moves each channel by
// at most 0.5/255.
void write_ppm(const std::filesystem::path& path, const Image& image);
Image read_ppm(const std::filesystem::path& path);

struct PpmHeader {
  int height = 0;
  int width = 0;
};
// Parses only the header; cheap existence/geometry validation.
PpmHeader read_ppm_header(const std::filesystem::path& path);

}  // namespace gmap::io
