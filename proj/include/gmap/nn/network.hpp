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

#include <array>
#include <string>
#include <vector>

#include "gmap/nn/params.hpp"
#include "gmap/nn/rng.hpp"
#include "gmap/nn/tensor.hpp"

namespace gmap::nn {

struct LayerSpec {
  enum class Kind {
    dense,
    conv2d,
    transposed_conv2d,
    relu,
    leaky_relu,
    tanh,
    sigmoid,
    flatten,
    reshape,
  };

  Kind kind = Kind::relu;
  int in_features = 0, out_features = 0;          // dense
  int in_channels = 0, out_channels = 0;          // conv / transposed conv
  int kernel = 0, stride = 1, padding = 0;
  double slope = 0.2;                             // leaky_relu
  Shape target_shape;                             // reshape

  static LayerSpec Dense(int in, int out);
  static LayerSpec Conv2d(int in_c, int out_c, int kernel, int stride, int padding);
  static LayerSpec TransposedConv2d(int in_c, int out_c, int kernel, int stride, int padding);
  static LayerSpec Relu();
  static LayerSpec LeakyRelu(double slope);
  static LayerSpec Tanh();
  static LayerSpec Sigmoid();
  static LayerSpec Flatten();
  static LayerSpec Reshape(Shape target);

  const char* kind_name() const;
};

// Feed-forward stack of layers. Construction registers parameters in the
// given store (named "<name>.L<i>.weight" / ".bias"), initialized with
// uniform Glorot bounds and zero biases from the provided RNG, and validates
// the full shape chain; a layer whose geometry cannot work raises an error
// naming the layer index.
class Network {
 public:
  Network() = default;
  Network(std::string name, Shape input_shape, std::vector<LayerSpec> layers, ParamStore& store,
          Rng& init_rng);

  Tensor forward(const Tensor& input, const ParamStore& store) const;

  const std::string& name() const { return name_; }
  const Shape& input_shape() const { return input_shape_; }
  const Shape& output_shape() const { return output_shape_; }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  const std::vector<int>& param_ids() const { return param_ids_; }

 private:
  std::string name_;
  Shape input_shape_, output_shape_;
  std::vector<LayerSpec> layers_;
  std::vector<std::array<int, 2>> layer_params_;  // {weight id, bias id} or {-1, -1}
  std::vector<int> param_ids_;
};

}  // namespace gmap::nn
