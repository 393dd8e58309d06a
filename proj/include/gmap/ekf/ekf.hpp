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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gmap/ekf/linalg.hpp"
#include "gmap/geom/pose.hpp"
#include "gmap/io/vo_file.hpp"
#include "gmap/model/generative_map.hpp"

namespace gmap::ekf {

// Pose belief: state plus 6x6 covariance, re-symmetrized after every update.
struct EkfBelief {
  geom::PoseState state;
  Mat covariance = Mat::identity(6);
};

// Q = sigma_q I and the initial covariance is the same matrix.
struct NoiseConfig {
  double sigma_q = 1e-3;

  void validate() const;
  Mat q_matrix() const { return Mat::identity(6, sigma_q); }
};

// Latent observation with its per-coordinate variance (diagonal of R).
struct ObservationPacket {
  std::vector<double> z_obs;
  std::vector<double> r_diag;  // > 0
};

struct TransitionModel {
  enum class Kind { constant, control };
  Kind kind = Kind::constant;
  // one control per transition; required (frames - 1 entries) for `control`
  std::vector<io::ControlSignal> controls;

  // f(p) for step t: identity, or additive p + u_t in normalized state space.
  geom::PoseState apply(const geom::PoseState& state, int t) const;
};

using VectorFn = std::function<std::vector<double>(const geom::PoseState&)>;

// Central differences, column j = (fn(x + eps e_j) - fn(x - eps e_j)) / (2 eps).
Mat finite_diff_jacobian(const VectorFn& fn, const geom::PoseState& x, double eps);

// p <- f(p, u); Sigma <- F Sigma F^T + Q with F from finite differences.
void predict(EkfBelief& belief, const TransitionModel& transition, int t, const Mat& q,
             double jacobian_eps = 1e-4);

// K = Sigma G^T (G Sigma G^T + R)^-1; p += K (z - g(p)); Sigma -= K G Sigma.
void correct(EkfBelief& belief, const ObservationPacket& packet, const VectorFn& g,
             double jacobian_eps = 1e-4);

// z = mean of q(z|I), R = exp(log-variance) floored at 1e-8.
ObservationPacket make_observation(const model::GenerativeMapModel& model,
                                   std::span<const double> image);

struct TrajectoryPoint {
  geom::PoseState state;
  Mat covariance;
};

// Per-frame predict (from frame 1 on) + correct, emitting the post-correction
// belief. Frame 0 is corrected against the initial belief Sigma = sigma_q I.
std::vector<TrajectoryPoint> run_localization(const model::GenerativeMapModel& model,
                                              std::span<const std::vector<double>> images,
                                              const TransitionModel& transition,
                                              const NoiseConfig& noise,
                                              const geom::PoseState& init);

}  // namespace gmap::ekf
