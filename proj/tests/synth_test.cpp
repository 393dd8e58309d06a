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

#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gmap/nn/rng.hpp"
#include "gmap/synth/dataset.hpp"
#include "gmap/synth/render.hpp"
#include "gmap/synth/scene.hpp"
#include "gmap/synth/trajectory.hpp"
#include "gmap/synth/vo_sim.hpp"

using namespace gmap;
using synth::Scene;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "gmap_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string describe(const Scene& s) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& b : s.boxes) {
    for (double v : b.lo) os << v << " ";
    for (double v : b.hi) os << v << " ";
    for (double v : b.albedo) os << v << " ";
  }
  for (const auto& sp : s.spheres) {
    for (double v : sp.center) os << v << " ";
    os << sp.radius << " ";
    for (double v : sp.albedo) os << v << " ";
  }
  for (const auto& w : s.walls) {
    for (double v : w.color_a) os << v << " ";
    for (double v : w.color_b) os << v << " ";
    os << w.cell_size << " ";
  }
  return os.str();
}

// fixed-checker scene for the analytic wall tests; primitives are tucked into
// a corner far behind the camera so they can never enter the view
Scene wall_test_scene(double cell) {
  Scene s;
  s.seed = 0;
  for (auto& w : s.walls) {
    w.color_a = {0.8, 0.2, 0.1};
    w.color_b = {0.1, 0.3, 0.9};
    w.cell_size = cell;
  }
  for (int i = 0; i < 8; ++i) {
    s.spheres.push_back({{-1.9, 0.05 + 0.02 * i, -1.9}, 0.015, {0.5, 0.5, 0.5}});
  }
  return s;
}

double max_abs_diff(const io::Image& a, const io::Image& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("build_scene is deterministic and seeds differ") {
  const Scene a = synth::build_scene(42);
  const Scene b = synth::build_scene(42);
  const Scene c = synth::build_scene(43);
  CHECK(describe(a) == describe(b));
  CHECK(describe(a) != describe(c));
  CHECK(a.primitive_count() == 8);
}

TEST_CASE("build_scene keeps primitives inside the room") {
  for (std::uint64_t seed : {1ull, 7ull, 42ull, 123456789ull}) {
    const Scene s = synth::build_scene(seed);
    CHECK(s.primitive_count() >= 6);
    for (const auto& b : s.boxes) {
      for (int i = 0; i < 3; ++i) {
        CHECK(b.lo[i] >= s.room_lo[i]);
        CHECK(b.hi[i] <= s.room_hi[i]);
        CHECK(b.lo[i] < b.hi[i]);
      }
    }
    for (const auto& sp : s.spheres) {
      for (int i = 0; i < 3; ++i) {
        CHECK(sp.center[i] - sp.radius >= s.room_lo[i]);
        CHECK(sp.center[i] + sp.radius <= s.room_hi[i]);
      }
    }
  }
}

TEST_CASE("render: head-on view of one checker cell is that cell's color") {
  const double cell = 0.6;
  const Scene s = wall_test_scene(cell);
  // camera half a meter from the +z wall, centered on cell (0, 2): x in
  // [0.19, 0.41], y in [1.39, 1.61] for fov 25 -- a single cell
  const geom::Pose pose = geom::Pose::make({0.3, 1.5, 1.5}, {1, 0, 0, 0});
  const geom::CameraIntrinsics intr{25.0, 16, 16};
  const io::Image img = synth::render(s, pose, intr);

  // cell (cu=0, cv=2) has even parity -> color_a; the +z wall faces away
  // from the light so only the ambient term remains
  const double shade = 0.35;
  const synth::Rgb expected{0.8 * shade, 0.2 * shade, 0.1 * shade};
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      for (int c = 0; c < 3; ++c) {
        REQUIRE(std::abs(img.at(c, y, x) - expected[c]) < 1e-6);
      }
    }
  }
}

TEST_CASE("render: identical poses give bit-identical images") {
  const Scene s = synth::build_scene(42);
  const geom::Pose pose = geom::Pose::make({0.5, 1.4, -0.3},
                                           geom::quat_canonical({0.9, 0.1, 0.3, -0.2}));
  const geom::CameraIntrinsics intr{60.0, 24, 24};
  const io::Image a = synth::render(s, pose, intr);
  const io::Image b = synth::render(s, pose, intr);
  REQUIRE(a.data.size() == b.data.size());
  for (std::size_t i = 0; i < a.data.size(); ++i) REQUIRE(a.data[i] == b.data[i]);
}

TEST_CASE("render: sliding by one cell shifts the image by a whole pixel count") {
  const double cell = 0.6;
  const Scene s = wall_test_scene(cell);
  // visible width at the wall is exactly two cells (64 px), so one cell is
  // exactly 32 px
  const double fov = 2.0 * std::atan(1.2) * 180.0 / std::numbers::pi;
  const geom::CameraIntrinsics intr{fov, 64, 64};
  const io::Image img1 = synth::render(s, geom::Pose::make({0.0, 1.5, 1.5}, {1, 0, 0, 0}), intr);
  const io::Image img2 = synth::render(s, geom::Pose::make({0.6, 1.5, 1.5}, {1, 0, 0, 0}), intr);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x + 32 < 64; ++x) {
      for (int c = 0; c < 3; ++c) {
        REQUIRE(std::abs(img2.at(c, y, x) - img1.at(c, y, x + 32)) < 1e-9);
      }
    }
  }
}

TEST_CASE("render rejects poses outside the room or inside primitives") {
  const Scene s = synth::build_scene(42);
  const geom::CameraIntrinsics intr{60.0, 8, 8};
  CHECK_THROWS_WITH_AS(synth::render(s, geom::Pose::make({5, 1, 0}, {1, 0, 0, 0}), intr),
                       doctest::Contains("outside"), std::invalid_argument);
  // centre of the first primitive
  geom::Vec3 inside;
  if (!s.boxes.empty()) {
    for (int i = 0; i < 3; ++i) inside[i] = 0.5 * (s.boxes[0].lo[i] + s.boxes[0].hi[i]);
  } else {
    inside = s.spheres[0].center;
  }
  CHECK_THROWS_WITH_AS(synth::render(s, geom::Pose::make(inside, {1, 0, 0, 0}), intr),
                       doctest::Contains("primitive"), std::invalid_argument);
}

TEST_CASE("trajectories stay inside the room with bounded steps") {
  const Scene s = synth::build_scene(42);
  for (auto kind : {synth::TrajectoryKind::arc, synth::TrajectoryKind::lissajous}) {
    for (int n : {2, 50, 1000}) {
      const auto poses = synth::gen_trajectory(s, kind, n, 7);
      REQUIRE(static_cast<int>(poses.size()) == n);
      for (const auto& p : poses) {
        CHECK(synth::point_in_room(s, p.translation));
        CHECK_FALSE(synth::point_in_primitive(s, p.translation));
      }
      for (int i = 0; i + 1 < n; ++i) {
        CHECK(geom::translation_error_m(poses[i].translation, poses[i + 1].translation) < 0.05);
        CHECK(geom::rotation_error_deg(poses[i].rotation, poses[i + 1].rotation) < 5.0);
      }
    }
  }
}

TEST_CASE("trajectories are seed-deterministic and face the interior") {
  const Scene s = synth::build_scene(42);
  const auto a = synth::gen_trajectory(s, synth::TrajectoryKind::arc, 100, 11);
  const auto b = synth::gen_trajectory(s, synth::TrajectoryKind::arc, 100, 11);
  const auto c = synth::gen_trajectory(s, synth::TrajectoryKind::arc, 100, 12);
  REQUIRE(a.size() == b.size());
  bool all_equal = true;
  bool any_diff_from_c = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    all_equal = all_equal && a[i].translation == b[i].translation &&
                a[i].rotation.w == b[i].rotation.w;
    any_diff_from_c = any_diff_from_c || a[i].translation != c[i].translation;
  }
  CHECK(all_equal);
  CHECK(any_diff_from_c);

  // look directions point back toward the arc's interior
  for (const auto& p : a) {
    const geom::Vec3 fwd = geom::quat_rotate(p.rotation, {0, 0, 1});
    const geom::Vec3 to_center{-p.translation[0], 1.5 - p.translation[1], -p.translation[2]};
    CHECK(fwd[0] * to_center[0] + fwd[1] * to_center[1] + fwd[2] * to_center[2] > 0.0);
  }
}

TEST_CASE("gen_trajectory rejects silly frame counts") {
  const Scene s = synth::build_scene(1);
  CHECK_THROWS_AS(synth::gen_trajectory(s, synth::TrajectoryKind::arc, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("make_dataset writes a loadable, reproducible dataset") {
  const Scene s = synth::build_scene(42);
  const auto traj = synth::gen_trajectory(s, synth::TrajectoryKind::arc, 12, 3);
  const geom::CameraIntrinsics intr{60.0, 16, 16};

  const auto dir1 = temp_dir("ds1");
  const auto dir2 = temp_dir("ds2");
  const auto m1 = synth::make_dataset(s, traj, intr, dir1);
  const auto m2 = synth::make_dataset(s, traj, intr, dir2);
  CHECK(m1.frames.size() == traj.size());

  // byte-identical output across runs
  for (const auto& frame : m1.frames) {
    std::ifstream f1(dir1 / frame.image_path, std::ios::binary);
    std::ifstream f2(dir2 / frame.image_path, std::ios::binary);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    REQUIRE(b1.str() == b2.str());
  }

  // stats cover the trajectory box
  for (int axis = 0; axis < 3; ++axis) {
    double worst = 0.0;
    for (const auto& p : traj) {
      worst = std::max(worst, std::abs(p.translation[axis] - m1.stats.center[axis]));
    }
    CHECK(m1.stats.half_extent[axis] >= worst - 1e-12);
  }

  // loads back and validates
  const auto loaded = io::load_manifest(io::manifest_path(dir1));
  CHECK(loaded.frames.size() == m1.frames.size());
}

TEST_CASE("scene views are discriminative across distant poses") {
  const Scene s = synth::build_scene(42);
  const geom::CameraIntrinsics intr{60.0, 16, 16};
  nn::Rng rng(999);

  auto random_pose = [&] {
    const double r = rng.uniform(0.2, 1.1);
    const double a = rng.uniform(0.0, 2 * std::numbers::pi);
    const double yaw = rng.uniform(0.0, 2 * std::numbers::pi);
    const geom::Quat q{std::cos(yaw / 2), 0.0, std::sin(yaw / 2), 0.0};
    return geom::Pose::make({r * std::cos(a), rng.uniform(1.1, 1.9), r * std::sin(a)},
                            geom::quat_canonical(q));
  };

  int used = 0;
  double mean_diff_sum = 0.0;
  while (used < 100) {
    const geom::Pose p1 = random_pose();
    const geom::Pose p2 = random_pose();
    if (geom::translation_error_m(p1.translation, p2.translation) < 0.2) continue;
    const io::Image i1 = synth::render(s, p1, intr);
    const io::Image i2 = synth::render(s, p2, intr);
    double diff = 0.0;
    for (std::size_t i = 0; i < i1.data.size(); ++i) diff += std::abs(i1.data[i] - i2.data[i]);
    mean_diff_sum += diff / static_cast<double>(i1.data.size());
    ++used;
  }
  CHECK(mean_diff_sum / 100.0 > 0.01);
}

TEST_CASE("simulate_vo: exact deltas dead-reckon to ground truth") {
  const Scene s = synth::build_scene(42);
  const auto traj = synth::gen_trajectory(s, synth::TrajectoryKind::arc, 50, 3);
  const geom::NormStats stats = synth::norm_stats_from_trajectory(traj);

  const auto controls = synth::simulate_vo(traj, stats, synth::VoConfig{});
  REQUIRE(controls.size() == traj.size() - 1);

  geom::PoseState state = geom::pose_to_state(traj.front(), stats);
  for (std::size_t t = 0; t < controls.size(); ++t) {
    for (int i = 0; i < 6; ++i) state.x[i] += controls[t][i];
    const geom::PoseState truth = geom::pose_to_state(traj[t + 1], stats);
    for (int i = 0; i < 6; ++i) REQUIRE(std::abs(state.x[i] - truth.x[i]) < 1e-12);
  }
}

TEST_CASE("simulate_vo: constant drift accumulates linearly") {
  const Scene s = synth::build_scene(7);
  const auto traj = synth::gen_trajectory(s, synth::TrajectoryKind::arc, 1001, 3);
  const geom::NormStats stats = synth::norm_stats_from_trajectory(traj);

  synth::VoConfig cfg;
  cfg.drift = {1e-4, 0, 0, 0, 0, 0};
  const auto controls = synth::simulate_vo(traj, stats, cfg);

  geom::PoseState state = geom::pose_to_state(traj.front(), stats);
  for (const auto& u : controls) {
    for (int i = 0; i < 6; ++i) state.x[i] += u[i];
  }
  const geom::PoseState truth = geom::pose_to_state(traj.back(), stats);
  CHECK(std::abs(state.x[0] - truth.x[0]) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("simulate_vo: seeded noise reproduces") {
  const Scene s = synth::build_scene(7);
  const auto traj = synth::gen_trajectory(s, synth::TrajectoryKind::lissajous, 20, 3);
  const geom::NormStats stats = synth::norm_stats_from_trajectory(traj);
  synth::VoConfig cfg;
  cfg.noise_std = {1e-3, 1e-3, 1e-3, 1e-4, 1e-4, 1e-4};
  cfg.seed = 55;
  const auto a = synth::simulate_vo(traj, stats, cfg);
  const auto b = synth::simulate_vo(traj, stats, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK_THROWS_AS(synth::simulate_vo({traj[0]}, stats, cfg), std::invalid_argument);
}
