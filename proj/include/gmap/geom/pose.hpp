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

#include <array>
#include <string>

namespace gmap::geom {

using Vec3 = std::array<double, 3>;

// Unit quaternion, scalar first. Canonical form keeps w >= 0 (the double
// cover is collapsed so the log map is single-valued).
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

double quat_norm(const Quat& q);
// Rescales to unit norm and flips sign to w >= 0. Throws on near-zero norm.
Quat quat_canonical(const Quat& q);
Quat quat_multiply(const Quat& a, const Quat& b);
Vec3 quat_rotate(const Quat& q, const Vec3& v);

// Half-angle log map: for q = (cos(t/2), sin(t/2) a), returns (t/2) a.
// Requires unit norm (1e-9) and canonical sign, so the result lies in the
// closed ball of radius pi/2.
Vec3 quat_log(const Quat& q);
// Inverse map (cos|v|, sin|v| v/|v|), series limit (1, v) below 1e-8.
Quat quat_exp(const Vec3& v);

// 6-DoF camera pose in world units.
struct Pose {
  Vec3 translation{0.0, 0.0, 0.0};
  Quat rotation;  // canonical unit quaternion

  // Validates near-unit norm (1e-6), then renormalizes and canonicalizes.
  static Pose make(const Vec3& translation, const Quat& rotation);
};

// Filter/network state: normalized translation ++ log-quaternion.
struct PoseState {
  std::array<double, 6> x{};
};

// Per-axis affine map from the scene's translation bounding box to [-1, 1].
struct NormStats {
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 half_extent{1.0, 1.0, 1.0};  // strictly positive

  void validate() const;
};

PoseState pose_to_state(const Pose& pose, const NormStats& stats);
Pose state_to_pose(const PoseState& state, const NormStats& stats);

// 2 * arccos(|<q1,q2>|) in degrees; symmetric, sign-invariant, in [0, 180].
double rotation_error_deg(const Quat& q1, const Quat& q2);
double translation_error_m(const Vec3& t1, const Vec3& t2);

// "tx ty tz qw qx qy qz", 17 significant digits.
std::string pose_to_line(const Pose& pose);
Pose pose_from_line(const std::string& line);

}  // namespace gmap::geom
