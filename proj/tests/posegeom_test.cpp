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

#include "gmap/geom/pose.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gmap/nn/rng.hpp"

using namespace gmap::geom;
using gmap::nn::Rng;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2Half = std::sqrt(2.0) / 2.0;

Quat random_unit_quat(Rng& rng) {
  Quat q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  return quat_canonical(q);
}
}  // namespace

TEST_CASE("quat_log on identity and axis rotations") {
  auto l0 = quat_log({1, 0, 0, 0});
  CHECK(l0[0] == 0.0);
  CHECK(l0[1] == 0.0);
  CHECK(l0[2] == 0.0);

  auto lz = quat_log({kSqrt2Half, 0, 0, kSqrt2Half});  // 90 deg about z
  CHECK(lz[0] == doctest::Approx(0.0));
  CHECK(lz[2] == doctest::Approx(kPi / 4).epsilon(1e-12));

  auto lx = quat_log({0, 1, 0, 0});  // 180 deg about x
  CHECK(lx[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(lx[1] == 0.0);
  CHECK(lx[2] == 0.0);
}

TEST_CASE("quat_log rejects non-unit quaternions") {
  CHECK_THROWS_AS(quat_log({2, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("quat_exp basics") {
  auto q0 = quat_exp({0, 0, 0});
  CHECK(q0.w == 1.0);
  CHECK(q0.x == 0.0);

  auto qz = quat_exp({0, 0, kPi / 4});
  CHECK(qz.w == doctest::Approx(kSqrt2Half).epsilon(1e-12));
  CHECK(qz.z == doctest::Approx(kSqrt2Half).epsilon(1e-12));
}

TEST_CASE("quat_exp/quat_log round trips on the canonical domain") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    // vector in the open ball of radius pi/2
    Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double r = rng.uniform(0.0, kPi / 2 - 1e-6);
    for (auto& c : v) c *= n > 0 ? r / n : 0.0;

    const auto vv = quat_log(quat_canonical(quat_exp(v)));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(vv[k] - v[k]) < 1e-9);
  }
  for (int i = 0; i < 1000; ++i) {
    const Quat q = random_unit_quat(rng);
    const Quat qq = quat_exp(quat_log(q));
    CHECK(std::abs(qq.w - q.w) < 1e-9);
    CHECK(std::abs(qq.x - q.x) < 1e-9);
    CHECK(std::abs(qq.y - q.y) < 1e-9);
    CHECK(std::abs(qq.z - q.z) < 1e-9);
  }
}

TEST_CASE("pose_to_state normalization") {
  NormStats stats{{1, 0, 0}, {2, 2, 2}};

  auto zero = pose_to_state(Pose::make({1, 0, 0}, {1, 0, 0, 0}), stats);
  for (double c : zero.x) CHECK(c == 0.0);

  auto ones = pose_to_state(Pose::make({3, 2, 2}, {1, 0, 0, 0}), stats);
  CHECK(ones.x[0] == 1.0);
  CHECK(ones.x[1] == 1.0);
  CHECK(ones.x[2] == 1.0);

  auto s = pose_to_state(Pose::make({2, 0, 0}, {kSqrt2Half, 0, 0, kSqrt2Half}), stats);
  CHECK(s.x[0] == doctest::Approx(0.5));
  CHECK(s.x[3] == doctest::Approx(0.0));
  CHECK(s.x[5] == doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("state_to_pose inverts pose_to_state") {
  NormStats stats{{0.3, 1.5, -0.8}, {1.9, 0.7, 2.4}};
  auto p0 = state_to_pose(PoseState{}, stats);
  CHECK(p0.translation[0] == doctest::Approx(0.3));
  CHECK(p0.rotation.w == 1.0);

  PoseState sz;
  sz.x[5] = kPi / 4;
  auto pz = state_to_pose(sz, stats);
  CHECK(pz.rotation.w == doctest::Approx(kSqrt2Half).epsilon(1e-12));
  CHECK(pz.rotation.z == doctest::Approx(kSqrt2Half).epsilon(1e-12));

  Rng rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const Pose p = Pose::make(
        {rng.uniform(-2, 2) * stats.half_extent[0] + stats.center[0],
         rng.uniform(-2, 2) * stats.half_extent[1] + stats.center[1],
         rng.uniform(-2, 2) * stats.half_extent[2] + stats.center[2]},
        random_unit_quat(rng));
    const Pose rt = state_to_pose(pose_to_state(p, stats), stats);
    CHECK(translation_error_m(rt.translation, p.translation) < 1e-9);
    CHECK(std::abs(rt.rotation.w - p.rotation.w) < 1e-9);
    CHECK(std::abs(rt.rotation.x - p.rotation.x) < 1e-9);
    CHECK(std::abs(rt.rotation.y - p.rotation.y) < 1e-9);
    CHECK(std::abs(rt.rotation.z - p.rotation.z) < 1e-9);
  }
}

TEST_CASE("rotation_error_deg") {
  const Quat id{1, 0, 0, 0};
  const Quat z90{kSqrt2Half, 0, 0, kSqrt2Half};
  CHECK(rotation_error_deg(z90, z90) == 0.0);
  CHECK(rotation_error_deg(id, z90) == doctest::Approx(90.0).epsilon(1e-12));
  // double cover: q and -q are the same rotation
  const Quat mz90{-kSqrt2Half, 0, 0, -kSqrt2Half};
  CHECK(rotation_error_deg(z90, mz90) == doctest::Approx(0.0));
  CHECK(rotation_error_deg(id, mz90) == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(rotation_error_deg(mz90, id) == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("translation_error_m") {
  CHECK(translation_error_m({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(translation_error_m({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    Vec3 a{rng.normal(), rng.normal(), rng.normal()};
    Vec3 b{rng.normal(), rng.normal(), rng.normal()};
    CHECK(translation_error_m(a, b) == translation_error_m(b, a));
  }
}

TEST_CASE("pose text line round trips at 17 digits") {
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    const Pose p =
        Pose::make({rng.normal() * 3, rng.normal() * 3, rng.normal() * 3}, random_unit_quat(rng));
    const Pose q = pose_from_line(pose_to_line(p));
    CHECK(q.translation == p.translation);
    CHECK(q.rotation.w == doctest::Approx(p.rotation.w).epsilon(1e-15));
    CHECK(q.rotation.x == doctest::Approx(p.rotation.x).epsilon(1e-15));
  }
  CHECK_THROWS_AS(pose_from_line("1 2 3"), std::invalid_argument);
  CHECK_THROWS_AS(pose_from_line("1 2 3 1 0 0 0 9"), std::invalid_argument);
}
