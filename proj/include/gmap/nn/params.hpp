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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gmap/nn/tensor.hpp"

namespace gmap::nn {

struct Param {
  std::string name;
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;  // accumulated across a batch, cleared by zero_grad
};

// Owns all trainable parameters of a model. Parameter ids are dense indices
// in creation order; buffers have stable addresses so graph leaves can borrow
// them for the duration of a forward/backward pass.
class ParamStore {
 public:
  int add(std::string name, Shape shape, std::vector<double> init);

  Param& at(int id) { return *params_.at(id); }
  const Param& at(int id) const { return *params_.at(id); }
  int find(std::string_view name) const;  // -1 when absent
  int count() const { return static_cast<int>(params_.size()); }
  std::size_t total_values() const;

  void zero_grad();
  void accumulate(int id, const std::vector<double>& grad, double scale = 1.0);
  double grad_norm() const;

  // Injects the parameter as a graph leaf borrowing its value buffer.
  Tensor leaf(int id) const;

 private:
  std::vector<std::unique_ptr<Param>> params_;
};

}  // namespace gmap::nn
