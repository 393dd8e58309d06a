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
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gmap::geom {

double quat_norm(const Quat& q) {
  return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
}

Quat quat_canonical(const Quat& q) {
  const double n = quat_norm(q);
  if (!(n > 1e-12)) throw std::invalid_argument("quat_canonical: zero-norm quaternion");
  double s = 1.0 / n;
  if (q.w < 0.0) s = -s;
  return {q.w * s, q.x * s, q.y * s, q.z * s};
}

Quat quat_multiply(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Vec3 quat_rotate(const Quat& q, const Vec3& v) {
  // q * (0, v) * conj(q), expanded
  const Quat p{0.0, v[0], v[1], v[2]};
  const Quat qc{q.w, -q.x, -q.y, -q.z};
  const Quat r = quat_multiply(quat_multiply(q, p), qc);
  return {r.x, r.y, r.z};
}

Vec3 quat_log(const Quat& q) {
  const double n = quat_norm(q);
  if (std::abs(n - 1.0) > 1e-9) {
    throw std::invalid_argument("quat_log: quaternion norm deviates from 1 by " +
                                std::to_string(std::abs(n - 1.0)));
  }
  const double s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (s < 1e-12) return {q.x, q.y, q.z};  // identity neighborhood
  const double half_angle = std::atan2(s, q.w);
  const double f = half_angle / s;
  return {f * q.x, f * q.y, f * q.z};
}

Quat quat_exp(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n < 1e-8) return {1.0, v[0], v[1], v[2]};
  const double f = std::sin(n) / n;
  return {std::cos(n), f * v[0], f * v[1], f * v[2]};
}

Pose Pose::make(const Vec3& translation, const Quat& rotation) {
  const double n = quat_norm(rotation);
  if (std::abs(n - 1.0) > 1e-6) {
    throw std::invalid_argument("Pose: quaternion norm " + std::to_string(n) + " is not unit");
  }
  Pose p;
  p.translation = translation;
  // rescale only when the norm is meaningfully off; an already-unit value
  // keeps its bits so text round trips stay lossless
  if (std::abs(n - 1.0) > 1e-12) {
    p.rotation = quat_canonical(rotation);
  } else if (rotation.w < 0.0) {
    p.rotation = {-rotation.w, -rotation.x, -rotation.y, -rotation.z};
  } else {
    p.rotation = rotation;
  }
  return p;
}

void NormStats::validate() const {
  for (double h : half_extent) {
    if (!(h > 0.0)) throw std::invalid_argument("NormStats: half_extent must be > 0");
  }
}

PoseState pose_to_state(const Pose& pose, const NormStats& stats) {
  stats.validate();
  PoseState s;
  for (int i = 0; i < 3; ++i) {
    s.x[i] = (pose.translation[i] - stats.center[i]) / stats.half_extent[i];
  }
  const Vec3 lq = quat_log(pose.rotation);
  for (int i = 0; i < 3; ++i) s.x[3 + i] = lq[i];
  return s;
}

Pose state_to_pose(const PoseState& state, const NormStats& stats) {
  stats.validate();
  Pose p;
  for (int i = 0; i < 3; ++i) {
    p.translation[i] = state.x[i] * stats.half_extent[i] + stats.center[i];
  }
  p.rotation = quat_canonical(quat_exp({state.x[3], state.x[4], state.x[5]}));
  return p;
}

double rotation_error_deg(const Quat& q1, const Quat& q2) {
  const double n1 = quat_norm(q1);
  const double n2 = quat_norm(q2);
  if (std::abs(n1 - 1.0) > 1e-6 || std::abs(n2 - 1.0) > 1e-6) {
    throw std::invalid_argument("rotation_error_deg: inputs must be unit quaternions");
  }
  double d = std::abs(q1.w * q2.w + q1.x * q2.x + q1.y * q2.y + q1.z * q2.z) / (n1 * n2);
  if (d > 1.0) d = 1.0;
  return 2.0 * std::acos(d) * 180.0 / std::numbers::pi;
}

double translation_error_m(const Vec3& t1, const Vec3& t2) {
  const double dx = t1[0] - t2[0];
  const double dy = t1[1] - t2[1];
  const double dz = t1[2] - t2[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::string pose_to_line(const Pose& pose) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g %.17g %.17g",
                pose.translation[0], pose.translation[1], pose.translation[2], pose.rotation.w,
                pose.rotation.x, pose.rotation.y, pose.rotation.z);
  return buf;
}

Pose pose_from_line(const std::string& line) {
  std::istringstream is(line);
  Vec3 t;
  Quat q;
  if (!(is >> t[0] >> t[1] >> t[2] >> q.w >> q.x >> q.y >> q.z)) {
    throw std::invalid_argument("pose_from_line: expected 7 numbers, got '" + line + "'");
  }
  std::string extra;
  if (is >> extra) {
    throw std::invalid_argument("pose_from_line: trailing tokens in '" + line + "'");
  }
  return Pose::make(t, q);
}

}  // namespace gmap::geom
