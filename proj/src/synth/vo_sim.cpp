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

#include "gmap/synth/vo_sim.hpp"

#include <stdexcept>

#include "gmap/nn/rng.hpp"

namespace gmap::synth {

std::vector<io::ControlSignal> simulate_vo(const std::vector<geom::Pose>& trajectory,
                                           const geom::NormStats& stats, const VoConfig& config) {
  if (trajectory.size() < 2) {
    throw std::invalid_argument("simulate_vo: need at least 2 poses");
  }
  for (double s : config.noise_std) {
    if (s < 0.0) throw std::invalid_argument("simulate_vo: noise_std must be >= 0");
  }

  std::vector<geom::PoseState> states;
  states.reserve(trajectory.size());
  for (const auto& p : trajectory) states.push_back(geom::pose_to_state(p, stats));

  nn::Rng rng(config.seed ^ 0x0dce77u);
  std::vector<io::ControlSignal> controls(trajectory.size() - 1);
  for (std::size_t t = 0; t + 1 < states.size(); ++t) {
    for (int i = 0; i < 6; ++i) {
      double u = states[t + 1].x[i] - states[t].x[i] + config.drift[i];
      if (config.noise_std[i] > 0.0) u += config.noise_std[i] * rng.normal();
      controls[t][i] = u;
    }
  }
  return controls;
}

}  // namespace gmap::synth
