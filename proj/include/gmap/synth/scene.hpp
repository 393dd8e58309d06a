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
#include <cstdint>
#include <vector>

#include "gmap/geom/pose.hpp"

namespace gmap::synth {

using Rgb = std::array<double, 3>;

struct Box {
  geom::Vec3 lo, hi;
  Rgb albedo;
};

struct Sphere {
  geom::Vec3 center;
  double radius;
  Rgb albedo;
};

// Two-color checker on one room face; u/v are the two in-plane world axes.
struct WallPattern {
  Rgb color_a, color_b;
  double cell_size;
};

// Procedural desk-scale room. Walls are indexed -x,+x,-y,+y,-z,+z; every
// face carries a distinct checker so that viewing directions are easy to
// tell apart. Primitives keep clear of the central flight region (horizontal
// radius <= ~1.2 m, height 1.0..2.0 m) that the trajectory generators use.
struct Scene {
  std::uint64_t seed = 0;
  geom::Vec3 room_lo{-2.0, 0.0, -2.0};
  geom::Vec3 room_hi{2.0, 3.0, 2.0};
  std::vector<Box> boxes;
  std::vector<Sphere> spheres;
  std::array<WallPattern, 6> walls;

  std::size_t primitive_count() const { return boxes.size() + spheres.size(); }
};

// Deterministic scene from a seed: the fixed 4m x 3m x 4m room and 8 seeded
// primitives (wall ring, floor, ceiling).
Scene build_scene(std::uint64_t seed);

bool point_in_room(const Scene& scene, const geom::Vec3& p);
bool point_in_primitive(const Scene& scene, const geom::Vec3& p);

}  // namespace gmap::synth
