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

#include "doctest.h"
#include "gmap/nn/rng.hpp"

using namespace gmap::nn;

namespace {

Tensor random_input(const Shape& shape, Rng& rng) {
  std::vector<double> v(numel(shape));
  for (auto& x : v) x = rng.uniform(-1, 1);
  return Tensor::constant(shape, v);
}

// Zero-initialized biases can leave relu pre-activations at exactly 0, where
// the loss has a kink and finite differences disagree with the subgradient.
// Randomizing every parameter keeps pre-activations off the kinks.
void randomize_params(ParamStore& store, Rng& rng) {
  for (int id = 0; id < store.count(); ++id) {
    for (auto& v : store.at(id).value) v = rng.uniform(-0.6, 0.6);
  }
}

}  // namespace

TEST_CASE("gradient_check: linear network is exact") {
  Rng rng(3);
  ParamStore store;
  Network net("lin", {6}, {LayerSpec::Dense(6, 4)}, store, rng);
  // loss is quadratic in the parameters, so central differences carry no
  // truncation error at any h; a larger h keeps cancellation noise down
  const double err = gradient_check(net, store, random_input({6}, rng), 1e-2);
  CHECK(err < 1e-10);
}

TEST_CASE("gradient_check: conv+dense network under 1e-5") {
  Rng rng(4);
  ParamStore store;
  Network net("cd", {2, 8, 8},
              {LayerSpec::Conv2d(2, 3, 4, 2, 1), LayerSpec::LeakyRelu(0.2),
               LayerSpec::Conv2d(3, 4, 4, 2, 1), LayerSpec::Relu(), LayerSpec::Flatten(),
               LayerSpec::Dense(16, 8), LayerSpec::Tanh(), LayerSpec::Dense(8, 3),
               LayerSpec::Sigmoid()},
              store, rng);
  randomize_params(store, rng);
  const double err = gradient_check(net, store, random_input({2, 8, 8}, rng), 1e-6);
  CHECK(err < 1e-5);
}

TEST_CASE("gradient_check: transposed conv network under 1e-5") {
  Rng rng(5);
  ParamStore store;
  Network net("tc", {8},
              {LayerSpec::Dense(8, 2 * 2 * 2), LayerSpec::Relu(), LayerSpec::Reshape({2, 2, 2}),
               LayerSpec::TransposedConv2d(2, 3, 4, 2, 1), LayerSpec::Relu(),
               LayerSpec::TransposedConv2d(3, 1, 4, 2, 1), LayerSpec::Sigmoid()},
              store, rng);
  randomize_params(store, rng);
  const double err = gradient_check(net, store, random_input({8}, rng), 1e-6);
  CHECK(err < 1e-5);
}

TEST_CASE("gradient_check flags a corrupted backward rule") {
  Rng rng(6);
  ParamStore store;
  const int w = store.add("w", {4}, {0.3, -0.2, 0.8, -0.6});

  // tanh forward paired with the derivative of sin: plainly wrong
  auto corrupted = [](const Tensor& x) {
    return custom_unary(
        x,
        [](std::span<const double> in) {
          std::vector<double> out(in.size());
          for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::tanh(in[i]);
          return out;
        },
        [](std::span<const double> in, std::span<const double> dy, std::span<double> dx) {
          for (std::size_t i = 0; i < in.size(); ++i) dx[i] += dy[i] * std::cos(in[i]);
        });
  };

  const double err = gradient_check_fn(
      store,
      [&](const ParamStore& s) { return sum(square(corrupted(s.leaf(w)))); }, 1e-6);
  CHECK(err > 1e-2);
}

TEST_CASE("gradient_check rejects non-positive h") {
  Rng rng(7);
  ParamStore store;
  Network net("lin", {2}, {LayerSpec::Dense(2, 1)}, store, rng);
  CHECK_THROWS_AS(gradient_check(net, store, random_input({2}, rng), 0.0),
                  std::invalid_argument);
}
