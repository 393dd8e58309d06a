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

#include <cstdint>
#include <vector>

#include "gmap/nn/params.hpp"

namespace gmap::nn {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // > 0 enables global-norm gradient clipping before the update
  double grad_clip = 0.0;
};

// Adam with bias correction. Moment buffers are laid out per parameter and
// sized at construction; step() consumes the gradients accumulated in the
// store.
class Adam {
 public:
  Adam(const ParamStore& store, AdamConfig cfg);

  // Throws on non-finite gradients, naming the offending parameter.
  void step(ParamStore& store);

  std::int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  std::int64_t step_count_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace gmap::nn
