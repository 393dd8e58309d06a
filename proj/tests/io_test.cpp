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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gmap/io/manifest.hpp"
#include "gmap/io/ppm.hpp"
#include "gmap/io/traj_csv.hpp"
#include "gmap/io/vo_file.hpp"
#include "gmap/nn/rng.hpp"

using namespace gmap;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "gmap_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

io::Image solid_image(int h, int w, double r, double g, double b) {
  io::Image img;
  img.channels = 3;
  img.height = h;
  img.width = w;
  img.data.resize(std::size_t(3) * h * w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(0, y, x) = r;
      img.at(1, y, x) = g;
      img.at(2, y, x) = b;
    }
  }
  return img;
}

}  // namespace

TEST_CASE("ppm: black and white round trip exactly") {
  const auto dir = temp_dir("ppm");
  auto img = solid_image(4, 6, 0.0, 0.0, 0.0);
  io::write_ppm(dir / "black.ppm", img);
  auto back = io::read_ppm(dir / "black.ppm");
  CHECK(back.height == 4);
  CHECK(back.width == 6);
  for (double v : back.data) CHECK(v == 0.0);

  img = solid_image(4, 6, 1.0, 1.0, 1.0);
  io::write_ppm(dir / "white.ppm", img);
  back = io::read_ppm(dir / "white.ppm");
  for (double v : back.data) CHECK(v == 1.0);
}

TEST_CASE("ppm: random image round trips within quantization") {
  const auto dir = temp_dir("ppm_rnd");
  nn::Rng rng(314);
  io::Image img = solid_image(8, 8, 0, 0, 0);
  for (auto& v : img.data) v = rng.uniform01();
  io::write_ppm(dir / "r.ppm", img);
  const auto back = io::read_ppm(dir / "r.ppm");
  double worst = 0.0;
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    worst = std::max(worst, std::abs(back.data[i] - img.data[i]));
  }
  CHECK(worst <= 0.5 / 255.0 + 1e-12);
}

TEST_CASE("ppm: malformed header is rejected") {
  const auto dir = temp_dir("ppm_bad");
  {
    std::ofstream os(dir / "bad.ppm", std::ios::binary);
    os << "P5\n4 4\n255\n";
  }
  CHECK_THROWS_WITH_AS(io::read_ppm(dir / "bad.ppm"), doctest::Contains("P6"),
                       std::runtime_error);
  {
    std::ofstream os(dir / "bad2.ppm", std::ios::binary);
    os << "P6\n4 abc\n255\n";
  }
  CHECK_THROWS(io::read_ppm(dir / "bad2.ppm"));
  {
    std::ofstream os(dir / "trunc.ppm", std::ios::binary);
    os << "P6\n4 4\n255\n";
    os << "xx";  // far too little pixel data
  }
  CHECK_THROWS_WITH_AS(io::read_ppm(dir / "trunc.ppm"), doctest::Contains("truncated"),
                       std::runtime_error);
}

namespace {

io::DatasetManifest sample_manifest(const fs::path& dir, int n_frames) {
  io::DatasetManifest m;
  m.scene_seed = 42;
  m.intrinsics = {55.0, 8, 8};
  m.stats = {{0.25, 1.5, -0.125}, {1.25, 0.5, 1.0}};
  nn::Rng rng(9);
  for (int i = 0; i < n_frames; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05d.ppm", i);
    io::write_ppm(dir / name, solid_image(8, 8, 0.3, 0.5, 0.7));
    geom::Quat q{1.0 + rng.uniform01(), rng.normal(), rng.normal(), rng.normal()};
    m.frames.push_back(
        {i, geom::Pose::make({rng.normal(), rng.normal(), rng.normal()}, geom::quat_canonical(q)),
         name});
  }
  return m;
}

}  // namespace

TEST_CASE("manifest: 10-frame round trip is lossless") {
  const auto dir = temp_dir("manifest");
  const auto m = sample_manifest(dir, 10);
  io::save_manifest(io::manifest_path(dir), m);
  const auto back = io::load_manifest(io::manifest_path(dir));

  CHECK(back.scene_seed == m.scene_seed);
  CHECK(back.intrinsics.fov_v_deg == m.intrinsics.fov_v_deg);
  CHECK(back.stats.center == m.stats.center);
  CHECK(back.stats.half_extent == m.stats.half_extent);
  REQUIRE(back.frames.size() == m.frames.size());
  for (std::size_t i = 0; i < m.frames.size(); ++i) {
    CHECK(back.frames[i].frame_id == m.frames[i].frame_id);
    CHECK(back.frames[i].image_path == m.frames[i].image_path);
    CHECK(back.frames[i].pose.translation == m.frames[i].pose.translation);
    CHECK(back.frames[i].pose.rotation.w == m.frames[i].pose.rotation.w);
    CHECK(back.frames[i].pose.rotation.x == m.frames[i].pose.rotation.x);
  }
}

TEST_CASE("manifest: truncation and missing images are reported") {
  const auto dir = temp_dir("manifest_bad");
  const auto m = sample_manifest(dir, 4);
  io::save_manifest(io::manifest_path(dir), m);

  // chop the last frame line -> truncated
  {
    std::ifstream is(io::manifest_path(dir));
    std::stringstream all;
    all << is.rdbuf();
    std::string text = all.str();
    const auto cut = text.rfind('\n', text.size() - 2);
    std::ofstream os(io::manifest_path(dir));
    os << text.substr(0, cut + 1);
  }
  CHECK_THROWS_WITH_AS(io::load_manifest(io::manifest_path(dir)), doctest::Contains(":10"),
                       std::runtime_error);

  io::save_manifest(io::manifest_path(dir), m);
  fs::remove(dir / "frame_00002.ppm");
  CHECK_THROWS_WITH_AS(io::load_manifest(io::manifest_path(dir)),
                       doctest::Contains("frame_00002.ppm"), std::runtime_error);
}

TEST_CASE("manifest: wrong image resolution is rejected") {
  const auto dir = temp_dir("manifest_res");
  const auto m = sample_manifest(dir, 2);
  io::save_manifest(io::manifest_path(dir), m);
  io::write_ppm(dir / "frame_00001.ppm", solid_image(4, 4, 0, 0, 0));
  CHECK_THROWS_WITH_AS(io::load_manifest(io::manifest_path(dir)), doctest::Contains("4x4"),
                       std::runtime_error);
}

TEST_CASE("vo file: round trip, empty file, malformed line") {
  const auto dir = temp_dir("vo");
  std::vector<io::ControlSignal> controls;
  nn::Rng rng(5);
  for (int i = 0; i < 7; ++i) {
    io::ControlSignal u;
    for (auto& v : u) v = rng.normal() * 1e-3;
    controls.push_back(u);
  }
  io::save_vo(dir / "u.txt", controls);
  const auto back = io::load_vo(dir / "u.txt");
  REQUIRE(back.size() == controls.size());
  for (std::size_t i = 0; i < controls.size(); ++i) {
    for (int k = 0; k < 6; ++k) CHECK(back[i][k] == controls[i][k]);
  }

  io::save_vo(dir / "empty.txt", {});
  CHECK(io::load_vo(dir / "empty.txt").empty());

  {
    std::ofstream os(dir / "bad.txt");
    os << "GMAP_VO 1\n0 1 2 3\n";
  }
  CHECK_THROWS_WITH_AS(io::load_vo(dir / "bad.txt"), doctest::Contains(":2"), std::runtime_error);
}

TEST_CASE("trajectory csv: round trip") {
  const auto dir = temp_dir("traj");
  std::vector<io::TrajectoryRow> rows;
  nn::Rng rng(8);
  for (int i = 0; i < 5; ++i) {
    io::TrajectoryRow r;
    r.frame = i;
    for (auto& v : r.state.x) v = rng.normal();
    r.pose = geom::Pose::make({rng.normal(), rng.normal(), rng.normal()},
                              geom::quat_canonical({1.0 + rng.uniform01(), rng.normal(),
                                                    rng.normal(), rng.normal()}));
    r.trace_cov = rng.uniform01();
    rows.push_back(r);
  }
  io::save_trajectory_csv(dir / "t.csv", rows);
  const auto back = io::load_trajectory_csv(dir / "t.csv");
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].frame == rows[i].frame);
    CHECK(back[i].state.x == rows[i].state.x);
    CHECK(back[i].pose.translation == rows[i].pose.translation);
    CHECK(back[i].trace_cov == rows[i].trace_cov);
  }
  CHECK_THROWS(io::load_trajectory_csv(dir / "missing.csv"));
}
