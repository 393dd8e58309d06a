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

#include "gmap/synth/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmap/nn/rng.hpp"

namespace gmap::synth {

namespace {

using nn::Rng;
constexpr double kTau = 2.0 * std::numbers::pi;

Rgb hsv(double h, double s, double v) {
  h = h - std::floor(h);
  const double c = v * s;
  const double hp = h * 6.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  return {r + m, g + m, b + m};
}

geom::Vec3 clamp_into_room(const Scene& s, const geom::Vec3& p, double margin) {
  geom::Vec3 q = p;
  for (int i = 0; i < 3; ++i) {
    q[i] = std::clamp(q[i], s.room_lo[i] + margin, s.room_hi[i] - margin);
  }
  return q;
}

}  // namespace

Scene build_scene(std::uint64_t seed) {
  Rng rng(seed ^ 0x5ce9e5u);
  Scene s;
  s.seed = seed;

  // one distinct hue family per face, alternating light/dark cells
  const double hue0 = rng.uniform01();
  for (int i = 0; i < 6; ++i) {
    const double hue = hue0 + i / 6.0 + rng.uniform(-0.03, 0.03);
    s.walls[i].color_a = hsv(hue, 0.75, 0.95);
    s.walls[i].color_b = hsv(hue + 0.06, 0.55, 0.35);
    s.walls[i].cell_size = rng.uniform(0.5, 0.75);
  }

  // 8 primitives: 4 in a ring near the walls, 2 on the floor, 2 hanging from
  // the ceiling; sizes and radii keep the central flight region clear.
  auto place = [&](int zone, int index) {
    const double half = rng.uniform(0.18, 0.26);
    double y;
    double radius;
    double angle = (index + rng.uniform(0.15, 0.85)) * (kTau / 4.0);
    switch (zone) {
      case 0:  // wall ring
        radius = rng.uniform(1.60, 1.95 - half * 1.75);
        y = rng.uniform(0.4, 2.6);
        break;
      case 1:  // floor
        radius = rng.uniform(0.4, 1.3);
        y = rng.uniform(half, 0.7 - half);
        angle = rng.uniform(0.0, kTau);
        break;
      default:  // ceiling
        radius = rng.uniform(0.4, 1.3);
        y = rng.uniform(2.3 + half, 3.0 - half);
        angle = rng.uniform(0.0, kTau);
        break;
    }
    geom::Vec3 c{radius * std::cos(angle), y, radius * std::sin(angle)};
    c = clamp_into_room(s, c, half + 0.02);
    const Rgb albedo = hsv(rng.uniform01(), 0.85, 0.9);
    if (rng.below(2) == 0) {
      s.boxes.push_back(Box{{c[0] - half, c[1] - half, c[2] - half},
                            {c[0] + half, c[1] + half, c[2] + half},
                            albedo});
    } else {
      s.spheres.push_back(Sphere{c, half, albedo});
    }
  };
  for (int i = 0; i < 4; ++i) place(0, i);
  place(1, 0);
  place(1, 1);
  place(2, 0);
  place(2, 1);

  return s;
}

bool point_in_room(const Scene& scene, const geom::Vec3& p) {
  for (int i = 0; i < 3; ++i) {
    if (p[i] <= scene.room_lo[i] || p[i] >= scene.room_hi[i]) return false;
  }
  return true;
}

bool point_in_primitive(const Scene& scene, const geom::Vec3& p) {
  for (const auto& b : scene.boxes) {
    if (p[0] >= b.lo[0] && p[0] <= b.hi[0] && p[1] >= b.lo[1] && p[1] <= b.hi[1] &&
        p[2] >= b.lo[2] && p[2] <= b.hi[2]) {
      return true;
    }
  }
  for (const auto& sp : scene.spheres) {
    const double dx = p[0] - sp.center[0];
    const double dy = p[1] - sp.center[1];
    const double dz = p[2] - sp.center[2];
    if (dx * dx + dy * dy + dz * dz <= sp.radius * sp.radius) return true;
  }
  return false;
}

}  // namespace gmap::synth
