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

#include "gmap/ekf/ekf.hpp"

#include <cmath>
#include <stdexcept>

namespace gmap::ekf {

namespace {

void check_finite_state(const geom::PoseState& s, const char* where) {
  for (double v : s.x) {
    if (!std::isfinite(v)) {
      throw std::runtime_error(std::string(where) + ": state became non-finite");
    }
  }
}

}  // namespace

void NoiseConfig::validate() const {
  if (!(sigma_q > 0.0)) throw std::invalid_argument("NoiseConfig: sigma_q must be > 0");
}

geom::PoseState TransitionModel::apply(const geom::PoseState& state, int t) const {
  if (kind == Kind::constant) return state;
  if (t < 0 || t >= static_cast<int>(controls.size())) {
    throw std::out_of_range("TransitionModel: no control for transition " + std::to_string(t));
  }
  geom::PoseState out = state;
  for (int i = 0; i < 6; ++i) out.x[i] += controls[t][i];
  return out;
}

Mat finite_diff_jacobian(const VectorFn& fn, const geom::PoseState& x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("finite_diff_jacobian: eps must be > 0");
  Mat jac;
  for (int j = 0; j < 6; ++j) {
    geom::PoseState up = x, down = x;
    up.x[j] += eps;
    down.x[j] -= eps;
    const std::vector<double> fu = fn(up);
    const std::vector<double> fd = fn(down);
    if (fu.size() != fd.size()) {
      throw std::runtime_error("finite_diff_jacobian: fn output size varies");
    }
    if (j == 0) jac = Mat(static_cast<int>(fu.size()), 6);
    for (std::size_t r = 0; r < fu.size(); ++r) {
      const double v = (fu[r] - fd[r]) / (2.0 * eps);
      if (!std::isfinite(v)) {
        throw std::runtime_error("finite_diff_jacobian: non-finite derivative");
      }
      jac.at(static_cast<int>(r), j) = v;
    }
  }
  return jac;
}

void predict(EkfBelief& belief, const TransitionModel& transition, int t, const Mat& q,
             double jacobian_eps) {
  if (q.rows() != 6 || q.cols() != 6) throw std::invalid_argument("predict: Q must be 6x6");

  const Mat f_jac = finite_diff_jacobian(
      [&](const geom::PoseState& s) {
        const geom::PoseState next = transition.apply(s, t);
        return std::vector<double>(next.x.begin(), next.x.end());
      },
      belief.state, jacobian_eps);

  belief.state = transition.apply(belief.state, t);
  check_finite_state(belief.state, "predict");
  belief.covariance =
      symmetrized(add(matmul(matmul(f_jac, belief.covariance), f_jac.transposed()), q));
}

void correct(EkfBelief& belief, const ObservationPacket& packet, const VectorFn& g,
             double jacobian_eps) {
  const std::vector<double> predicted = g(belief.state);
  const int m = static_cast<int>(predicted.size());
  if (packet.z_obs.size() != predicted.size() || packet.r_diag.size() != predicted.size()) {
    throw std::invalid_argument("correct: observation dimension mismatch");
  }
  for (double r : packet.r_diag) {
    if (!(r > 0.0)) throw std::invalid_argument("correct: R diagonal must be > 0");
  }

  const Mat g_jac = finite_diff_jacobian(g, belief.state, jacobian_eps);  // m x 6

  // S = G Sigma G^T + R
  Mat s = matmul(matmul(g_jac, belief.covariance), g_jac.transposed());
  for (int i = 0; i < m; ++i) s.at(i, i) += packet.r_diag[i];

  // K = Sigma G^T S^-1 computed as (S^-1 G Sigma)^T
  const Mat k = cholesky_solve(s, matmul(g_jac, belief.covariance)).transposed();  // 6 x m

  for (int i = 0; i < 6; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += k.at(i, j) * (packet.z_obs[j] - predicted[j]);
    belief.state.x[i] += acc;
  }
  check_finite_state(belief.state, "correct");

  belief.covariance =
      symmetrized(sub(belief.covariance, matmul(k, matmul(g_jac, belief.covariance))));
}

ObservationPacket make_observation(const model::GenerativeMapModel& model,
                                   std::span<const double> image) {
  const model::GaussianLatent latent = model.encode_image(image);
  ObservationPacket packet;
  packet.z_obs = latent.mean;
  packet.r_diag.resize(latent.log_variance.size());
  for (std::size_t i = 0; i < packet.r_diag.size(); ++i) {
    packet.r_diag[i] = std::max(std::exp(latent.log_variance[i]), 1e-8);
  }
  return packet;
}

std::vector<TrajectoryPoint> run_localization(const model::GenerativeMapModel& model,
                                              std::span<const std::vector<double>> images,
                                              const TransitionModel& transition,
                                              const NoiseConfig& noise,
                                              const geom::PoseState& init) {
  if (images.empty()) throw std::invalid_argument("run_localization: no images");
  noise.validate();
  if (transition.kind == TransitionModel::Kind::control &&
      transition.controls.size() != images.size() - 1) {
    throw std::invalid_argument(
        "run_localization: control transitions need one control per frame transition (" +
        std::to_string(images.size() - 1) + "), got " +
        std::to_string(transition.controls.size()));
  }

  const VectorFn g = [&model](const geom::PoseState& s) { return model.encode_pose(s).mean; };
  const Mat q = noise.q_matrix();

  EkfBelief belief;
  belief.state = init;
  belief.covariance = Mat::identity(6, noise.sigma_q);

  std::vector<TrajectoryPoint> trajectory;
  trajectory.reserve(images.size());
  for (std::size_t t = 0; t < images.size(); ++t) {
    try {
      if (t > 0) predict(belief, transition, static_cast<int>(t) - 1, q);
      correct(belief, make_observation(model, images[t]), g);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_localization: frame " + std::to_string(t) + ": " + e.what());
    }
    trajectory.push_back({belief.state, belief.covariance});
  }
  return trajectory;
}

}  // namespace gmap::ekf
