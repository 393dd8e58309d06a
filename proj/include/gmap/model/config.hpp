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

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace gmap::model {

// Desk-scale defaults; every knob is a config field so larger setups stay
// reachable without code changes.
struct ModelConfig {
  int latent_dim = 32;
  int channels = 3;
  int height = 32;
  int width = 32;
  int base_channels = 16;
  int pose_hidden = 128;
  double decoder_variance = 0.049787068367863944;  // e^-3
  double learning_rate = 1e-4;
  int epochs = 200;
  int batch_size = 8;
  std::uint64_t seed = 0;
  double grad_clip = 0.0;  // 0 disables clipping
  int threads = 0;         // 0 = hardware concurrency

  bool operator==(const ModelConfig&) const = default;

  void validate() const {
    auto pow2_ge16 = [](int v) { return v >= 16 && (v & (v - 1)) == 0; };
    if (latent_dim <= 0) throw std::invalid_argument("config: latent_dim must be positive");
    if (channels <= 0) throw std::invalid_argument("config: channels must be positive");
    if (!pow2_ge16(height) || !pow2_ge16(width)) {
      throw std::invalid_argument("config: image sides must be powers of two >= 16");
    }
    if (base_channels <= 0) throw std::invalid_argument("config: base_channels must be positive");
    if (pose_hidden <= 0) throw std::invalid_argument("config: pose_hidden must be positive");
    if (!(decoder_variance > 0.0)) {
      throw std::invalid_argument("config: decoder_variance must be > 0");
    }
    if (epochs <= 0) throw std::invalid_argument("config: epochs must be positive");
    if (batch_size <= 0) throw std::invalid_argument("config: batch_size must be positive");
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  }
};

}  // namespace gmap::model
