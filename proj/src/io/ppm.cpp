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

#include "gmap/io/ppm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace gmap::io {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& msg) {
  throw std::runtime_error(path.string() + ": " + msg);
}

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
int read_header_int(std::istream& is, const std::filesystem::path& path) {
  int c = is.get();
  while (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#') {
    if (c == '#') {
      while (c != '\n' && c != EOF) c = is.get();
    }
    c = is.get();
  }
  if (c < '0' || c > '9') fail(path, "malformed PPM header");
  long v = 0;
  while (c >= '0' && c <= '9') {
    v = v * 10 + (c - '0');
    if (v > 1 << 20) fail(path, "PPM header dimension overflow");
    c = is.get();
  }
  if (c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != EOF) {
    fail(path, "malformed PPM header");
  }
  return static_cast<int>(v);
}

PpmHeader parse_header(std::istream& is, const std::filesystem::path& path) {
  char m0 = 0, m1 = 0;
  is.get(m0);
  is.get(m1);
  if (m0 != 'P' || m1 != '6') fail(path, "not a P6 PPM file");
  PpmHeader h;
  h.width = read_header_int(is, path);
  h.height = read_header_int(is, path);
  const int maxval = read_header_int(is, path);
  if (maxval != 255) fail(path, "unsupported PPM maxval " + std::to_string(maxval));
  if (h.width <= 0 || h.height <= 0) fail(path, "degenerate PPM dimensions");
  return h;
}

}  // namespace

void write_ppm(const std::filesystem::path& path, const Image& image) {
  if (image.channels != 3) {
    throw std::invalid_argument("write_ppm: expected 3 channels, got " +
                                std::to_string(image.channels));
  }
  if (image.data.size() != std::size_t(3) * image.height * image.width) {
    throw std::invalid_argument("write_ppm: data size does not match dimensions");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(path, "cannot open for writing");
  os << "P6\n" << image.width << " " << image.height << "\n255\n";
  std::vector<unsigned char> row(std::size_t(3) * image.width);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        double v = image.at(c, y, x);
        v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        row[std::size_t(3) * x + c] = static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
      }
    }
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!os) fail(path, "write failed");
}

Image read_ppm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(path, "cannot open");
  const PpmHeader h = parse_header(is, path);

  Image img;
  img.channels = 3;
  img.height = h.height;
  img.width = h.width;
  img.data.resize(std::size_t(3) * h.height * h.width);
  std::vector<unsigned char> row(std::size_t(3) * h.width);
  for (int y = 0; y < h.height; ++y) {
    is.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!is) fail(path, "truncated pixel data at row " + std::to_string(y));
    for (int x = 0; x < h.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        img.at(c, y, x) = row[std::size_t(3) * x + c] / 255.0;
      }
    }
  }
  return img;
}

PpmHeader read_ppm_header(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(path, "cannot open");
  return parse_header(is, path);
}

}  // namespace gmap::io
