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
#include "gmap/io/vo_file.hpp"

namespace gmap::synth {

// Simulated visual odometry in normalized state coordinates: accurate local
// motion, optional per-step noise, and a constant drift bias that makes dead
// reckoning diverge over long horizons.
struct VoConfig {
  std::array<double, 6> noise_std{};  // per-step standard deviation, >= 0
  std::array<double, 6> drift{};      // added to every transition
  std::uint64_t seed = 0;
};

// One control per transition: u_t = (state_{t+1} - state_t) + noise_t + drift,
// with states taken through pose_to_state under `stats`.
std::vector<io::ControlSignal> simulate_vo(const std::vector<geom::Pose>& trajectory,
                                           const geom::NormStats& stats, const VoConfig& config);

}  // namespace gmap::synth
