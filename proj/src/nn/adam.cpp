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

#include "gmap/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace gmap::nn {

Adam::Adam(const ParamStore& store, AdamConfig cfg) : cfg_(cfg) {
  m_.resize(store.count());
  v_.resize(store.count());
  for (int i = 0; i < store.count(); ++i) {
    m_[i].assign(store.at(i).value.size(), 0.0);
    v_[i].assign(store.at(i).value.size(), 0.0);
  }
}

void Adam::step(ParamStore& store) {
  if (static_cast<int>(m_.size()) != store.count()) {
    throw std::invalid_argument("Adam: store layout changed since construction");
  }
  for (int id = 0; id < store.count(); ++id) {
    const Param& p = store.at(id);
    for (double g : p.grad) {
      if (!std::isfinite(g)) {
        throw std::runtime_error("Adam: non-finite gradient in parameter '" + p.name + "'");
      }
    }
  }

  double clip_factor = 1.0;
  if (cfg_.grad_clip > 0.0) {
    const double norm = store.grad_norm();
    if (norm > cfg_.grad_clip) clip_factor = cfg_.grad_clip / norm;
  }

  ++step_count_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_count_));
  for (int id = 0; id < store.count(); ++id) {
    Param& p = store.at(id);
    auto& m = m_[id];
    auto& v = v_[id];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i] * clip_factor;
      m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g;
      v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g * g;
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      p.value[i] -= cfg_.learning_rate * mhat / (std::sqrt(vhat) + cfg_.epsilon);
    }
  }
}

}  // namespace gmap::nn
