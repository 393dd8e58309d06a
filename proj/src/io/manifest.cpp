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

#include "gmap/io/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gmap/io/ppm.hpp"

namespace gmap::io {

namespace {

[[noreturn]] void fail_line(const std::filesystem::path& file, int line, const std::string& msg) {
  throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + msg);
}

std::string f17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool next_line(std::istream& is, std::string& line, int& lineno) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++lineno;
  return true;
}

}  // namespace

void save_manifest(const std::filesystem::path& file, const DatasetManifest& manifest) {
  manifest.intrinsics.validate();
  manifest.stats.validate();
  std::ofstream os(file);
  if (!os) throw std::runtime_error(file.string() + ": cannot open for writing");
  os << "GMAP_MANIFEST 1\n";
  os << "seed " << manifest.scene_seed << "\n";
  os << "intrinsics " << f17(manifest.intrinsics.fov_v_deg) << " " << manifest.intrinsics.height
     << " " << manifest.intrinsics.width << "\n";
  os << "norm_center " << f17(manifest.stats.center[0]) << " " << f17(manifest.stats.center[1])
     << " " << f17(manifest.stats.center[2]) << "\n";
  os << "norm_half_extent " << f17(manifest.stats.half_extent[0]) << " "
     << f17(manifest.stats.half_extent[1]) << " " << f17(manifest.stats.half_extent[2]) << "\n";
  os << "frames " << manifest.frames.size() << "\n";
  for (const auto& fr : manifest.frames) {
    os << fr.frame_id << " " << geom::pose_to_line(fr.pose) << " " << fr.image_path << "\n";
  }
  if (!os) throw std::runtime_error(file.string() + ": write failed");
}

DatasetManifest load_manifest(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error(file.string() + ": cannot open");
  const std::filesystem::path base = file.parent_path();

  DatasetManifest m;
  std::string line;
  int lineno = 0;

  if (!next_line(is, line, lineno) || line != "GMAP_MANIFEST 1") {
    fail_line(file, lineno == 0 ? 1 : lineno, "expected header 'GMAP_MANIFEST 1'");
  }

  auto expect_keyword_line = [&](const char* keyword) -> std::istringstream {
    if (!next_line(is, line, lineno)) fail_line(file, lineno + 1, "unexpected end of file");
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw != keyword) fail_line(file, lineno, "expected '" + std::string(keyword) + "' line");
    return ls;
  };

  {
    auto ls = expect_keyword_line("seed");
    if (!(ls >> m.scene_seed)) fail_line(file, lineno, "malformed seed");
  }
  {
    auto ls = expect_keyword_line("intrinsics");
    if (!(ls >> m.intrinsics.fov_v_deg >> m.intrinsics.height >> m.intrinsics.width)) {
      fail_line(file, lineno, "malformed intrinsics");
    }
  }
  {
    auto ls = expect_keyword_line("norm_center");
    if (!(ls >> m.stats.center[0] >> m.stats.center[1] >> m.stats.center[2])) {
      fail_line(file, lineno, "malformed norm_center");
    }
  }
  {
    auto ls = expect_keyword_line("norm_half_extent");
    if (!(ls >> m.stats.half_extent[0] >> m.stats.half_extent[1] >> m.stats.half_extent[2])) {
      fail_line(file, lineno, "malformed norm_half_extent");
    }
  }
  std::size_t count = 0;
  {
    auto ls = expect_keyword_line("frames");
    if (!(ls >> count)) fail_line(file, lineno, "malformed frame count");
  }

  m.intrinsics.validate();
  m.stats.validate();

  m.frames.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!next_line(is, line, lineno)) {
      fail_line(file, lineno + 1, "truncated: expected " + std::to_string(count) +
                                      " frames, got " + std::to_string(i));
    }
    std::istringstream ls(line);
    FrameEntry fr;
    geom::Vec3 t;
    geom::Quat q;
    if (!(ls >> fr.frame_id >> t[0] >> t[1] >> t[2] >> q.w >> q.x >> q.y >> q.z >>
          fr.image_path)) {
      fail_line(file, lineno, "malformed frame line (expected 9 tokens)");
    }
    std::string extra;
    if (ls >> extra) fail_line(file, lineno, "trailing tokens in frame line");
    if (fr.frame_id != static_cast<int>(i)) {
      fail_line(file, lineno, "frame ids must increase from 0; expected " + std::to_string(i) +
                                  ", got " + std::to_string(fr.frame_id));
    }
    try {
      fr.pose = geom::Pose::make(t, q);
    } catch (const std::exception& e) {
      fail_line(file, lineno, e.what());
    }
    m.frames.push_back(std::move(fr));
  }

  for (const auto& fr : m.frames) {
    const auto img = base / fr.image_path;
    if (!std::filesystem::exists(img)) {
      throw std::runtime_error(file.string() + ": referenced image missing: " + img.string());
    }
    const PpmHeader h = read_ppm_header(img);
    if (h.height != m.intrinsics.height || h.width != m.intrinsics.width) {
      throw std::runtime_error(file.string() + ": image " + img.string() + " is " +
                               std::to_string(h.width) + "x" + std::to_string(h.height) +
                               ", manifest declares " + std::to_string(m.intrinsics.width) + "x" +
                               std::to_string(m.intrinsics.height));
    }
  }
  return m;
}

}  // namespace gmap::io
