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

#include "gmap/model/generative_map.hpp"

#include <cmath>
#include <stdexcept>

#include "gmap/io/checkpoint.hpp"
#include "gmap/nn/rng.hpp"

namespace gmap::model {

namespace {

using nn::LayerSpec;
using nn::Shape;
using nn::Tensor;

constexpr double kLogVarClamp = 10.0;

int log2_int(int v) {
  int n = 0;
  while ((1 << (n + 1)) <= v) ++n;
  return n;
}

std::vector<LayerSpec> encoder_layers(const ModelConfig& c, int n_down) {
  std::vector<LayerSpec> layers;
  int in_c = c.channels;
  for (int i = 0; i < n_down; ++i) {
    const int out_c = c.base_channels << i;
    layers.push_back(LayerSpec::Conv2d(in_c, out_c, 4, 2, 1));
    layers.push_back(LayerSpec::LeakyRelu(0.2));
    in_c = out_c;
  }
  layers.push_back(LayerSpec::Flatten());
  const int flat = in_c * (c.height >> n_down) * (c.width >> n_down);
  layers.push_back(LayerSpec::Dense(flat, 2 * c.latent_dim));
  return layers;
}

std::vector<LayerSpec> decoder_layers(const ModelConfig& c, int n_down) {
  std::vector<LayerSpec> layers;
  const int top_c = c.base_channels << (n_down - 1);
  const int fh = c.height >> n_down;
  const int fw = c.width >> n_down;
  layers.push_back(LayerSpec::Dense(c.latent_dim, top_c * fh * fw));
  layers.push_back(LayerSpec::Relu());
  layers.push_back(LayerSpec::Reshape({top_c, fh, fw}));
  for (int i = n_down - 1; i > 0; --i) {
    layers.push_back(
        LayerSpec::TransposedConv2d(c.base_channels << i, c.base_channels << (i - 1), 4, 2, 1));
    layers.push_back(LayerSpec::Relu());
  }
  layers.push_back(LayerSpec::TransposedConv2d(c.base_channels, c.channels, 4, 2, 1));
  layers.push_back(LayerSpec::Sigmoid());
  return layers;
}

std::vector<LayerSpec> pose_encoder_layers(const ModelConfig& c) {
  return {LayerSpec::Dense(6, c.pose_hidden), LayerSpec::LeakyRelu(0.2),
          LayerSpec::Dense(c.pose_hidden, c.latent_dim)};
}

}  // namespace

std::vector<double> reparameterize(const GaussianLatent& latent, std::span<const double> noise) {
  if (latent.mean.size() != latent.log_variance.size() || latent.mean.size() != noise.size()) {
    throw std::invalid_argument("reparameterize: dimension mismatch");
  }
  std::vector<double> z(latent.mean.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = latent.mean[i] + std::exp(0.5 * latent.log_variance[i]) * noise[i];
  }
  return z;
}

double kl_diag_gaussian(const GaussianLatent& q, std::span<const double> p_mean) {
  if (q.mean.size() != q.log_variance.size() || q.mean.size() != p_mean.size()) {
    throw std::invalid_argument("kl_diag_gaussian: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < q.mean.size(); ++i) {
    const double d = q.mean[i] - p_mean[i];
    acc += std::exp(q.log_variance[i]) + d * d - 1.0 - q.log_variance[i];
  }
  return 0.5 * acc;
}

double reconstruction_nll(std::span<const double> image, std::span<const double> reconstruction,
                          double decoder_variance) {
  if (image.size() != reconstruction.size()) {
    throw std::invalid_argument("reconstruction_nll: shape mismatch");
  }
  if (!(decoder_variance > 0.0)) {
    throw std::invalid_argument("reconstruction_nll: decoder_variance must be > 0");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double d = image[i] - reconstruction[i];
    acc += d * d;
  }
  return acc / (2.0 * decoder_variance);
}

GenerativeMapModel::GenerativeMapModel(const ModelConfig& config) : cfg_(config) {
  cfg_.validate();
  image_size_ = std::size_t(cfg_.channels) * cfg_.height * cfg_.width;
  const int n_down = std::min(log2_int(cfg_.height), log2_int(cfg_.width)) - 2;

  // construction order pins the init RNG stream
  nn::Rng init_rng(cfg_.seed);
  image_encoder_ = nn::Network("image_encoder", {cfg_.channels, cfg_.height, cfg_.width},
                               encoder_layers(cfg_, n_down), params_, init_rng);
  pose_encoder_ = nn::Network("pose_encoder", {6}, pose_encoder_layers(cfg_), params_, init_rng);
  image_decoder_ = nn::Network("image_decoder", {cfg_.latent_dim}, decoder_layers(cfg_, n_down),
                               params_, init_rng);
}

Tensor GenerativeMapModel::image_tensor(std::span<const double> image) const {
  if (image.size() != image_size_) {
    throw std::invalid_argument("image has " + std::to_string(image.size()) +
                                " values, model expects " + std::to_string(image_size_));
  }
  return Tensor::constant({cfg_.channels, cfg_.height, cfg_.width},
                          std::vector<double>(image.begin(), image.end()));
}

Tensor GenerativeMapModel::state_tensor(const geom::PoseState& state) const {
  for (double v : state.x) {
    if (!std::isfinite(v)) throw std::invalid_argument("pose state has non-finite components");
  }
  return Tensor::constant({6}, std::vector<double>(state.x.begin(), state.x.end()));
}

GaussianLatent GenerativeMapModel::encode_image(std::span<const double> image) const {
  const Tensor out = image_encoder_.forward(image_tensor(image), params_);
  const Tensor mean = nn::slice(out, 0, cfg_.latent_dim);
  const Tensor lv = nn::clamp(nn::slice(out, cfg_.latent_dim, cfg_.latent_dim), -kLogVarClamp,
                              kLogVarClamp);
  GaussianLatent latent;
  latent.mean.assign(mean.value().begin(), mean.value().end());
  latent.log_variance.assign(lv.value().begin(), lv.value().end());
  return latent;
}

GaussianLatent GenerativeMapModel::encode_pose(const geom::PoseState& state) const {
  const Tensor out = pose_encoder_.forward(state_tensor(state), params_);
  GaussianLatent latent;
  latent.mean.assign(out.value().begin(), out.value().end());
  latent.log_variance.assign(cfg_.latent_dim, 0.0);
  return latent;
}

std::vector<double> GenerativeMapModel::decode_image(std::span<const double> z) const {
  if (static_cast<int>(z.size()) != cfg_.latent_dim) {
    throw std::invalid_argument("decode_image: z has " + std::to_string(z.size()) +
                                " values, expected " + std::to_string(cfg_.latent_dim));
  }
  const Tensor out = image_decoder_.forward(
      Tensor::constant({cfg_.latent_dim}, std::vector<double>(z.begin(), z.end())), params_);
  return {out.value().begin(), out.value().end()};
}

std::vector<double> GenerativeMapModel::generate_image(const geom::PoseState& state) const {
  return decode_image(encode_pose(state).mean);
}

GenerativeMapModel::LossGraph GenerativeMapModel::loss_graph(std::span<const double> image,
                                                             const geom::PoseState& state,
                                                             std::span<const double> noise) const {
  if (static_cast<int>(noise.size()) != cfg_.latent_dim) {
    throw std::invalid_argument("loss: noise must have latent dimension");
  }
  const Tensor img = image_tensor(image);
  const Tensor enc = image_encoder_.forward(img, params_);
  const Tensor mean = nn::slice(enc, 0, cfg_.latent_dim);
  const Tensor lv = nn::clamp(nn::slice(enc, cfg_.latent_dim, cfg_.latent_dim), -kLogVarClamp,
                              kLogVarClamp);

  const Tensor noise_t =
      Tensor::constant({cfg_.latent_dim}, std::vector<double>(noise.begin(), noise.end()));
  const Tensor z = nn::add(mean, nn::mul(nn::exp(nn::scale(lv, 0.5)), noise_t));
  const Tensor recon_img = image_decoder_.forward(z, params_);

  const Tensor recon = nn::scale(nn::sum(nn::square(nn::sub(img, recon_img))),
                                 1.0 / (2.0 * cfg_.decoder_variance));

  const Tensor pose_mean = pose_encoder_.forward(state_tensor(state), params_);
  const Tensor kl = nn::scale(
      nn::sum(nn::sub(nn::add(nn::exp(lv), nn::square(nn::sub(mean, pose_mean))),
                      nn::add_const(lv, 1.0))),
      0.5);

  return {nn::add(recon, kl), recon, kl};
}

LossBreakdown GenerativeMapModel::loss(std::span<const double> image, const geom::PoseState& state,
                                       std::span<const double> noise) const {
  const LossGraph g = loss_graph(image, state, noise);
  return {g.total.item(), g.recon.item(), g.kl.item()};
}

void GenerativeMapModel::save(const std::filesystem::path& file,
                              const geom::NormStats& stats) const {
  io::save_checkpoint(file, cfg_, stats, params_);
}

GenerativeMapModel::Loaded GenerativeMapModel::load(const std::filesystem::path& file) {
  const io::CheckpointData header = io::read_checkpoint_header(file);
  GenerativeMapModel model(header.config);
  const io::CheckpointData data = io::load_checkpoint_into(file, model.params_);
  return Loaded{std::move(model), data.stats};
}

GenerativeMapModel::Loaded GenerativeMapModel::load_expecting(const std::filesystem::path& file,
                                                              const ModelConfig& expected) {
  const io::CheckpointData header = io::read_checkpoint_header(file);
  if (!(header.config == expected)) {
    throw std::runtime_error(file.string() +
                             ": checkpoint config does not match the expected configuration");
  }
  return load(file);
}

}  // namespace gmap::model
