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

#include "gmap/nn/network.hpp"

#include <cmath>
#include <stdexcept>

namespace gmap::nn {

LayerSpec LayerSpec::Dense(int in, int out) {
  LayerSpec s;
  s.kind = Kind::dense;
  s.in_features = in;
  s.out_features = out;
  return s;
}

LayerSpec LayerSpec::Conv2d(int in_c, int out_c, int kernel, int stride, int padding) {
  LayerSpec s;
  s.kind = Kind::conv2d;
  s.in_channels = in_c;
  s.out_channels = out_c;
  s.kernel = kernel;
  s.stride = stride;
  s.padding = padding;
  return s;
}

LayerSpec LayerSpec::TransposedConv2d(int in_c, int out_c, int kernel, int stride, int padding) {
  LayerSpec s = Conv2d(in_c, out_c, kernel, stride, padding);
  s.kind = Kind::transposed_conv2d;
  return s;
}

LayerSpec LayerSpec::Relu() {
  LayerSpec s;
  s.kind = Kind::relu;
  return s;
}

LayerSpec LayerSpec::LeakyRelu(double slope) {
  LayerSpec s;
  s.kind = Kind::leaky_relu;
  s.slope = slope;
  return s;
}

LayerSpec LayerSpec::Tanh() {
  LayerSpec s;
  s.kind = Kind::tanh;
  return s;
}

LayerSpec LayerSpec::Sigmoid() {
  LayerSpec s;
  s.kind = Kind::sigmoid;
  return s;
}

LayerSpec LayerSpec::Flatten() {
  LayerSpec s;
  s.kind = Kind::flatten;
  return s;
}

LayerSpec LayerSpec::Reshape(Shape target) {
  LayerSpec s;
  s.kind = Kind::reshape;
  s.target_shape = std::move(target);
  return s;
}

const char* LayerSpec::kind_name() const {
  switch (kind) {
    case Kind::dense: return "dense";
    case Kind::conv2d: return "conv2d";
    case Kind::transposed_conv2d: return "transposed_conv2d";
    case Kind::relu: return "relu";
    case Kind::leaky_relu: return "leaky_relu";
    case Kind::tanh: return "tanh";
    case Kind::sigmoid: return "sigmoid";
    case Kind::flatten: return "flatten";
    case Kind::reshape: return "reshape";
  }
  return "?";
}

namespace {

[[noreturn]] void layer_fail(const std::string& net, std::size_t idx, const std::string& msg) {
  throw std::invalid_argument("network '" + net + "' layer " + std::to_string(idx) + ": " + msg);
}

std::vector<double> glorot_uniform(std::size_t n, int fan_in, int fan_out, Rng& rng) {
  const double s = std::sqrt(6.0 / (fan_in + fan_out));
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-s, s);
  return v;
}

// Shape after a layer; throws on geometry errors. Mirrors the checks the ops
// perform at call time so bad stacks fail at construction.
Shape propagate(const std::string& net, std::size_t idx, const LayerSpec& l, const Shape& in) {
  using Kind = LayerSpec::Kind;
  switch (l.kind) {
    case Kind::dense:
      if (in != Shape{l.in_features}) {
        layer_fail(net, idx, "dense expects [" + std::to_string(l.in_features) + "], got " +
                                 shape_str(in));
      }
      return {l.out_features};
    case Kind::conv2d: {
      if (in.size() != 3 || in[0] != l.in_channels) {
        layer_fail(net, idx, "conv2d expects [" + std::to_string(l.in_channels) + ",H,W], got " +
                                 shape_str(in));
      }
      const int eh = in[1] + 2 * l.padding - l.kernel;
      const int ew = in[2] + 2 * l.padding - l.kernel;
      if (eh < 0 || ew < 0 || eh % l.stride || ew % l.stride) {
        layer_fail(net, idx, "conv2d geometry does not tile " + shape_str(in));
      }
      return {l.out_channels, eh / l.stride + 1, ew / l.stride + 1};
    }
    case Kind::transposed_conv2d: {
      if (in.size() != 3 || in[0] != l.in_channels) {
        layer_fail(net, idx, "transposed_conv2d expects [" + std::to_string(l.in_channels) +
                                 ",H,W], got " + shape_str(in));
      }
      const int oh = (in[1] - 1) * l.stride - 2 * l.padding + l.kernel;
      const int ow = (in[2] - 1) * l.stride - 2 * l.padding + l.kernel;
      if (oh < 1 || ow < 1) layer_fail(net, idx, "transposed_conv2d output collapses");
      return {l.out_channels, oh, ow};
    }
    case Kind::flatten:
      return {static_cast<int>(numel(in))};
    case Kind::reshape:
      if (numel(l.target_shape) != numel(in)) {
        layer_fail(net, idx,
                   "reshape to " + shape_str(l.target_shape) + " from " + shape_str(in));
      }
      return l.target_shape;
    default:
      return in;  // activations keep the shape
  }
}

}  // namespace

Network::Network(std::string name, Shape input_shape, std::vector<LayerSpec> layers,
                 ParamStore& store, Rng& init_rng)
    : name_(std::move(name)), input_shape_(std::move(input_shape)), layers_(std::move(layers)) {
  Shape shape = input_shape_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& l = layers_[i];
    shape = propagate(name_, i, l, shape);
    std::array<int, 2> ids{-1, -1};
    const std::string base = name_ + ".L" + std::to_string(i);
    using Kind = LayerSpec::Kind;
    if (l.kind == Kind::dense) {
      ids[0] = store.add(base + ".weight", {l.out_features, l.in_features},
                         glorot_uniform(std::size_t(l.out_features) * l.in_features,
                                        l.in_features, l.out_features, init_rng));
      ids[1] = store.add(base + ".bias", {l.out_features},
                         std::vector<double>(l.out_features, 0.0));
    } else if (l.kind == Kind::conv2d) {
      const std::size_t n = std::size_t(l.out_channels) * l.in_channels * l.kernel * l.kernel;
      const int fan = l.kernel * l.kernel;
      ids[0] = store.add(base + ".weight", {l.out_channels, l.in_channels, l.kernel, l.kernel},
                         glorot_uniform(n, l.in_channels * fan, l.out_channels * fan, init_rng));
      ids[1] = store.add(base + ".bias", {l.out_channels},
                         std::vector<double>(l.out_channels, 0.0));
    } else if (l.kind == Kind::transposed_conv2d) {
      const std::size_t n = std::size_t(l.in_channels) * l.out_channels * l.kernel * l.kernel;
      const int fan = l.kernel * l.kernel;
      ids[0] = store.add(base + ".weight", {l.in_channels, l.out_channels, l.kernel, l.kernel},
                         glorot_uniform(n, l.in_channels * fan, l.out_channels * fan, init_rng));
      ids[1] = store.add(base + ".bias", {l.out_channels},
                         std::vector<double>(l.out_channels, 0.0));
    }
    layer_params_.push_back(ids);
    if (ids[0] >= 0) {
      param_ids_.push_back(ids[0]);
      param_ids_.push_back(ids[1]);
    }
  }
  output_shape_ = shape;
}

Tensor Network::forward(const Tensor& input, const ParamStore& store) const {
  if (input.shape() != input_shape_) {
    throw std::invalid_argument("network '" + name_ + "': input shape " +
                                shape_str(input.shape()) + ", expected " +
                                shape_str(input_shape_));
  }
  Tensor x = input;
  using Kind = LayerSpec::Kind;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& l = layers_[i];
    switch (l.kind) {
      case Kind::dense:
        x = dense(x, store.leaf(layer_params_[i][0]), store.leaf(layer_params_[i][1]));
        break;
      case Kind::conv2d:
        x = conv2d(x, store.leaf(layer_params_[i][0]), store.leaf(layer_params_[i][1]), l.stride,
                   l.padding);
        break;
      case Kind::transposed_conv2d:
        x = transposed_conv2d(x, store.leaf(layer_params_[i][0]), store.leaf(layer_params_[i][1]),
                              l.stride, l.padding);
        break;
      case Kind::relu: x = relu(x); break;
      case Kind::leaky_relu: x = leaky_relu(x, l.slope); break;
      case Kind::tanh: x = tanh(x); break;
      case Kind::sigmoid: x = sigmoid(x); break;
      case Kind::flatten: x = flatten(x); break;
      case Kind::reshape: x = reshape(x, l.target_shape); break;
    }
  }
  return x;
}

}  // namespace gmap::nn
