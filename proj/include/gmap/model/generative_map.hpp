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

#include <filesystem>
#include <span>
#include <vector>

#include "gmap/geom/pose.hpp"
#include "gmap/model/config.hpp"
#include "gmap/nn/network.hpp"
#include "gmap/nn/params.hpp"

namespace gmap::model {

// Diagonal Gaussian over the latent space.
struct GaussianLatent {
  std::vector<double> mean;
  std::vector<double> log_variance;
};

// z = mean + exp(log_variance / 2) * noise, elementwise.
std::vector<double> reparameterize(const GaussianLatent& latent, std::span<const double> noise);

// 1/2 * sum(exp(lv) + (mean - p_mean)^2 - 1 - lv); KL from q to the
// unit-variance Gaussian centered at p_mean. Always >= 0.
double kl_diag_gaussian(const GaussianLatent& q, std::span<const double> p_mean);

// sum((image - reconstruction)^2) / (2 * decoder_variance). Constant terms of
// the Gaussian log-density are dropped; they carry no gradient.
double reconstruction_nll(std::span<const double> image, std::span<const double> reconstruction,
                          double decoder_variance);

struct LossBreakdown {
  double total = 0.0;
  double recon = 0.0;
  double kl = 0.0;
};

// Pose-conditioned generative model: an image encoder q(z|I) emitting mean
// and log-variance, a pose encoder whose output is the latent mean under a
// fixed unit variance, and a sigmoid-bounded image decoder. All three train
// jointly against the reconstruction + KL objective.
class GenerativeMapModel {
 public:
  explicit GenerativeMapModel(const ModelConfig& config);

  const ModelConfig& config() const { return cfg_; }
  nn::ParamStore& params() { return params_; }
  const nn::ParamStore& params() const { return params_; }
  std::size_t image_size() const { return image_size_; }

  // Deterministic inference. encode_image clamps log-variance to [-10, 10];
  // encode_pose always reports zero log-variance (unit variance by
  // construction, not a learned output).
  GaussianLatent encode_image(std::span<const double> image) const;
  GaussianLatent encode_pose(const geom::PoseState& state) const;
  std::vector<double> decode_image(std::span<const double> z) const;

  // Mean-latent render of a queried pose: decode(encode_pose(state).mean).
  std::vector<double> generate_image(const geom::PoseState& state) const;

  LossBreakdown loss(std::span<const double> image, const geom::PoseState& state,
                     std::span<const double> noise) const;

  struct LossGraph {
    nn::Tensor total, recon, kl;
  };
  // Differentiable loss over this model's parameter store (single latent
  // sample provided by the caller as standard-normal noise).
  LossGraph loss_graph(std::span<const double> image, const geom::PoseState& state,
                       std::span<const double> noise) const;

  void save(const std::filesystem::path& file, const geom::NormStats& stats) const;
  struct Loaded;
  static Loaded load(const std::filesystem::path& file);
  // Refuses a checkpoint whose stored config differs from `expected`.
  static Loaded load_expecting(const std::filesystem::path& file, const ModelConfig& expected);

 private:
  nn::Tensor image_tensor(std::span<const double> image) const;
  nn::Tensor state_tensor(const geom::PoseState& state) const;

  ModelConfig cfg_;
  std::size_t image_size_ = 0;
  nn::ParamStore params_;
  nn::Network image_encoder_, pose_encoder_, image_decoder_;
};

struct GenerativeMapModel::Loaded {
  GenerativeMapModel model;
  geom::NormStats stats;
};

}  // namespace gmap::model
