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

#include "gmap/synth/render.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gmap::synth {

namespace {

constexpr double kAmbient = 0.35;
constexpr double kDiffuse = 0.65;
// fixed directional light (normalized below)
const geom::Vec3 kLightRaw{0.35, 0.85, 0.40};

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  geom::Vec3 normal{0, 0, 0};
  Rgb albedo{0, 0, 0};
};

geom::Vec3 normalize(const geom::Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double checker(double u, double v, double cell) {
  const long long cu = static_cast<long long>(std::floor(u / cell));
  const long long cv = static_cast<long long>(std::floor(v / cell));
  return ((cu + cv) & 1) ? 1.0 : 0.0;
}

// Exit point of a ray that starts inside the room; returns wall index
// (-x,+x,-y,+y,-z,+z), hit t, and the in-plane coordinates for the checker.
void hit_room_walls(const Scene& s, const geom::Vec3& o, const geom::Vec3& d, Hit& hit) {
  double best_t = std::numeric_limits<double>::infinity();
  int wall = -1;
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) continue;
    const bool positive = d[axis] > 0.0;
    const double plane = positive ? s.room_hi[axis] : s.room_lo[axis];
    const double t = (plane - o[axis]) / d[axis];
    if (t > 0.0 && t < best_t) {
      best_t = t;
      wall = axis * 2 + (positive ? 1 : 0);
    }
  }
  if (wall < 0) return;  // cannot happen for points strictly inside

  const int axis = wall / 2;
  const int ua = (axis + 1) % 3;
  const int va = (axis + 2) % 3;
  const geom::Vec3 p{o[0] + best_t * d[0], o[1] + best_t * d[1], o[2] + best_t * d[2]};
  const WallPattern& pat = s.walls[wall];
  hit.t = best_t;
  hit.normal = {0, 0, 0};
  hit.normal[axis] = (wall % 2) ? -1.0 : 1.0;  // inward
  hit.albedo = checker(p[ua], p[va], pat.cell_size) ? pat.color_b : pat.color_a;
}

void hit_box(const Box& b, const geom::Vec3& o, const geom::Vec3& d, Hit& hit) {
  double t_enter = 0.0;
  double t_exit = std::numeric_limits<double>::infinity();
  int enter_axis = -1;
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < b.lo[axis] || o[axis] > b.hi[axis]) return;
      continue;
    }
    double t0 = (b.lo[axis] - o[axis]) / d[axis];
    double t1 = (b.hi[axis] - o[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_enter) {
      t_enter = t0;
      enter_axis = axis;
    }
    t_exit = std::min(t_exit, t1);
    if (t_enter > t_exit) return;
  }
  if (enter_axis < 0 || t_enter <= 1e-9 || t_enter >= hit.t) return;
  hit.t = t_enter;
  hit.normal = {0, 0, 0};
  hit.normal[enter_axis] = d[enter_axis] > 0.0 ? -1.0 : 1.0;
  hit.albedo = b.albedo;
}

void hit_sphere(const Sphere& s, const geom::Vec3& o, const geom::Vec3& d, Hit& hit) {
  const geom::Vec3 oc{o[0] - s.center[0], o[1] - s.center[1], o[2] - s.center[2]};
  const double b = oc[0] * d[0] + oc[1] * d[1] + oc[2] * d[2];
  const double c = oc[0] * oc[0] + oc[1] * oc[1] + oc[2] * oc[2] - s.radius * s.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  double t = -b - sq;
  if (t <= 1e-9) t = -b + sq;
  if (t <= 1e-9 || t >= hit.t) return;
  const geom::Vec3 p{o[0] + t * d[0], o[1] + t * d[1], o[2] + t * d[2]};
  hit.t = t;
  hit.normal = {(p[0] - s.center[0]) / s.radius, (p[1] - s.center[1]) / s.radius,
                (p[2] - s.center[2]) / s.radius};
  hit.albedo = s.albedo;
}

}  // namespace

io::Image render(const Scene& scene, const geom::Pose& pose,
                 const geom::CameraIntrinsics& intrinsics) {
  intrinsics.validate();
  if (!point_in_room(scene, pose.translation)) {
    throw std::invalid_argument("render: camera pose is outside the room");
  }
  if (point_in_primitive(scene, pose.translation)) {
    throw std::invalid_argument("render: camera pose is inside a primitive");
  }

  const geom::Vec3 light = normalize(kLightRaw);
  const int h = intrinsics.height;
  const int w = intrinsics.width;
  const double tan_half = std::tan(intrinsics.fov_v_deg * std::numbers::pi / 360.0);
  const double aspect = static_cast<double>(w) / h;

  // camera axes in world coordinates: +x right, +y up, +z forward
  const geom::Vec3 right = geom::quat_rotate(pose.rotation, {1, 0, 0});
  const geom::Vec3 up = geom::quat_rotate(pose.rotation, {0, 1, 0});
  const geom::Vec3 fwd = geom::quat_rotate(pose.rotation, {0, 0, 1});
  const geom::Vec3& eye = pose.translation;

  io::Image img;
  img.channels = 3;
  img.height = h;
  img.width = w;
  img.data.resize(std::size_t(3) * h * w);

  for (int y = 0; y < h; ++y) {
    const double v = (1.0 - 2.0 * (y + 0.5) / h) * tan_half;
    for (int x = 0; x < w; ++x) {
      const double u = (2.0 * (x + 0.5) / w - 1.0) * tan_half * aspect;
      const geom::Vec3 dir = normalize({u * right[0] + v * up[0] + fwd[0],
                                        u * right[1] + v * up[1] + fwd[1],
                                        u * right[2] + v * up[2] + fwd[2]});

      Hit hit;
      hit_room_walls(scene, eye, dir, hit);
      for (const auto& b : scene.boxes) hit_box(b, eye, dir, hit);
      for (const auto& s : scene.spheres) hit_sphere(s, eye, dir, hit);

      const double lambert =
          hit.normal[0] * light[0] + hit.normal[1] * light[1] + hit.normal[2] * light[2];
      const double shade = kAmbient + kDiffuse * (lambert > 0.0 ? lambert : 0.0);
      for (int c = 0; c < 3; ++c) img.at(c, y, x) = hit.albedo[c] * shade;
    }
  }
  return img;
}

}  // namespace gmap::synth
