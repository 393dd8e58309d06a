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

#include "gmap/nn/params.hpp"

#include <cmath>
#include <stdexcept>

#include "gmap/kern/kernels.hpp"

namespace gmap::nn {

int ParamStore::add(std::string name, Shape shape, std::vector<double> init) {
  if (numel(shape) != init.size()) {
    throw std::invalid_argument("param '" + name + "': init size " +
                                std::to_string(init.size()) + " does not match shape " +
                                shape_str(shape));
  }
  if (find(name) >= 0) throw std::invalid_argument("duplicate param name '" + name + "'");
  auto p = std::make_unique<Param>();
  p->name = std::move(name);
  p->shape = std::move(shape);
  p->value = std::move(init);
  p->grad.assign(p->value.size(), 0.0);
  params_.push_back(std::move(p));
  return static_cast<int>(params_.size()) - 1;
}

int ParamStore::find(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i]->name == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t ParamStore::total_values() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p->value.size();
  return n;
}

void ParamStore::zero_grad() {
  for (auto& p : params_) p->grad.assign(p->value.size(), 0.0);
}

void ParamStore::accumulate(int id, const std::vector<double>& grad, double scale) {
  Param& p = at(id);
  if (grad.size() != p.grad.size()) {
    throw std::invalid_argument("param '" + p.name + "': gradient size mismatch");
  }
  kern::active().axpy(scale, grad.data(), p.grad.data(), grad.size());
}

double ParamStore::grad_norm() const {
  double sq = 0.0;
  for (const auto& p : params_) sq += kern::active().dot(p->grad.data(), p->grad.data(), p->grad.size());
  return std::sqrt(sq);
}

Tensor ParamStore::leaf(int id) const {
  const Param& p = at(id);
  return Tensor::param(p.shape, p.value.data(), id);
}

}  // namespace gmap::nn
