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

#include "gmap/nn/grad_check.hpp"

#include <cmath>
#include <stdexcept>

namespace gmap::nn {

double probe_loss(const Network& net, const ParamStore& store, const Tensor& input) {
  return sum(square(net.forward(input, store))).item();
}

double gradient_check_fn(ParamStore& store,
                         const std::function<Tensor(const ParamStore&)>& loss_builder, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("gradient_check: h must be > 0");

  auto grads = backward(loss_builder(store));

  double worst = 0.0;
  for (int id = 0; id < store.count(); ++id) {
    Param& p = store.at(id);
    const auto it = grads.find(id);
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double saved = p.value[i];
      p.value[i] = saved + h;
      const double up = loss_builder(store).item();
      p.value[i] = saved - h;
      const double down = loss_builder(store).item();
      p.value[i] = saved;

      const double fd = (up - down) / (2.0 * h);
      const double ad = it == grads.end() ? 0.0 : it->second[i];
      const double rel = std::abs(ad - fd) / std::max(std::abs(fd), 1e-8);
      if (rel > worst) worst = rel;
    }
  }
  return worst;
}

double gradient_check(const Network& net, ParamStore& store, const Tensor& input, double h) {
  return gradient_check_fn(
      store, [&](const ParamStore& s) { return sum(square(net.forward(input, s))); }, h);
}

}  // namespace gmap::nn
