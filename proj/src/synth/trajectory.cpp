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

#include "gmap/synth/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gmap/nn/rng.hpp"

namespace gmap::synth {

namespace {

using nn::Rng;
constexpr double kPi = std::numbers::pi;

geom::Vec3 normalize(const geom::Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

geom::Vec3 cross(const geom::Vec3& a, const geom::Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

geom::Quat quat_from_axes(const geom::Vec3& r, const geom::Vec3& u, const geom::Vec3& f) {
  // world-from-camera matrix with columns r, u, f
  const double m00 = r[0], m01 = u[0], m02 = f[0];
  const double m10 = r[1], m11 = u[1], m12 = f[1];
  const double m20 = r[2], m21 = u[2], m22 = f[2];
  geom::Quat q;
  const double tr = m00 + m11 + m22;
  if (tr > 0.0) {
    const double s = std::sqrt(tr + 1.0) * 2.0;
    q.w = 0.25 * s;
    q.x = (m21 - m12) / s;
    q.y = (m02 - m20) / s;
    q.z = (m10 - m01) / s;
  } else if (m00 > m11 && m00 > m22) {
    const double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
    q.w = (m21 - m12) / s;
    q.x = 0.25 * s;
    q.y = (m01 + m10) / s;
    q.z = (m02 + m20) / s;
  } else if (m11 > m22) {
    const double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
    q.w = (m02 - m20) / s;
    q.x = (m01 + m10) / s;
    q.y = 0.25 * s;
    q.z = (m12 + m21) / s;
  } else {
    const double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
    q.w = (m10 - m01) / s;
    q.x = (m02 + m20) / s;
    q.y = (m12 + m21) / s;
    q.z = 0.25 * s;
  }
  return quat_canonical(q);
}

geom::Pose look_pose(const geom::Vec3& eye, const geom::Vec3& forward) {
  const geom::Vec3 f = normalize(forward);
  const geom::Vec3 r = normalize(cross({0.0, 1.0, 0.0}, f));
  const geom::Vec3 u = cross(f, r);
  return geom::Pose::make(eye, quat_from_axes(r, u, f));
}

std::vector<geom::Pose> gen_arc(int n, Rng& rng) {
  const double radius = rng.uniform(0.95, 1.15);
  const double y0 = rng.uniform(1.35, 1.65);
  const double y_amp = rng.uniform(0.08, 0.2);
  const double y_phase = rng.uniform(0.0, 2.0 * kPi);
  const double a0 = rng.uniform(0.0, 2.0 * kPi);
  // per-step angle capped so translation stays under 5 cm and rotation
  // comfortably under 5 degrees
  const double step = std::min((300.0 * kPi / 180.0) / (n - 1), 1.6 * kPi / 180.0);

  std::vector<geom::Pose> poses;
  poses.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = a0 + i * step;
    const geom::Vec3 eye{radius * std::cos(a),
                         y0 + y_amp * std::sin(2.0 * (a - a0) + y_phase),
                         radius * std::sin(a)};
    const geom::Vec3 tangent = normalize(
        {-radius * std::sin(a), 2.0 * y_amp * std::cos(2.0 * (a - a0) + y_phase),
         radius * std::cos(a)});
    const geom::Vec3 to_center = normalize({-eye[0], y0 - eye[1], -eye[2]});
    const geom::Vec3 fwd{0.55 * to_center[0] + 0.45 * tangent[0],
                         0.55 * to_center[1] + 0.45 * tangent[1],
                         0.55 * to_center[2] + 0.45 * tangent[2]};
    poses.push_back(look_pose(eye, fwd));
  }
  return poses;
}

std::vector<geom::Pose> gen_lissajous(int n, Rng& rng) {
  const double ax = rng.uniform(0.6, 0.8);
  const double az = rng.uniform(0.6, 0.8);
  const double ay = rng.uniform(0.25, 0.4);
  const double y0 = rng.uniform(1.4, 1.6);
  const int fa = 1 + static_cast<int>(rng.below(2));
  const int fc = fa + 1;
  const int fb = 2 + static_cast<int>(rng.below(2));
  const double p1 = rng.uniform(0.0, 2.0 * kPi);
  const double p2 = rng.uniform(0.0, 2.0 * kPi);
  const double p3 = rng.uniform(0.0, 2.0 * kPi);
  const double p4 = rng.uniform(0.0, 2.0 * kPi);
  const double theta0 = rng.uniform(0.0, 2.0 * kPi);

  const double max_speed =
      std::sqrt(ax * fa * ax * fa + ay * fb * ay * fb + az * fc * az * fc);
  const double ds = std::min(2.0 * kPi / (n - 1), 0.04 / max_speed);

  // the gaze pans independently of the path, so the tangent flipping at the
  // figure's turning points cannot whip the camera around
  std::vector<geom::Pose> poses;
  poses.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double s = i * ds;
    const geom::Vec3 eye{ax * std::sin(fa * s + p1), y0 + ay * std::sin(fb * s + p2),
                         az * std::sin(fc * s + p3)};
    const double theta = theta0 + 0.6 * s;
    const double pitch = 0.18 * std::sin(s + p4);
    const geom::Vec3 fwd{std::cos(pitch) * std::cos(theta), std::sin(pitch),
                         std::cos(pitch) * std::sin(theta)};
    poses.push_back(look_pose(eye, fwd));
  }
  return poses;
}

}  // namespace

TrajectoryKind trajectory_kind_from_string(std::string_view s) {
  if (s == "arc") return TrajectoryKind::arc;
  if (s == "lissajous") return TrajectoryKind::lissajous;
  throw std::invalid_argument("unknown trajectory kind '" + std::string(s) +
                              "' (expected arc|lissajous)");
}

std::vector<geom::Pose> gen_trajectory(const Scene& scene, TrajectoryKind kind, int n_frames,
                                       std::uint64_t seed) {
  if (n_frames < 2) throw std::invalid_argument("gen_trajectory: need at least 2 frames");
  (void)scene;  // paths use the fixed flight region of the standard room
  Rng rng(seed ^ 0x7a21d1b3u);
  switch (kind) {
    case TrajectoryKind::arc: return gen_arc(n_frames, rng);
    case TrajectoryKind::lissajous: return gen_lissajous(n_frames, rng);
  }
  throw std::invalid_argument("gen_trajectory: bad kind");
}

}  // namespace gmap::synth
