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

#include "gmap/nn/tensor.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "gmap/nn/grad_check.hpp"
#include "gmap/nn/network.hpp"
#include "gmap/nn/params.hpp"
#include "gmap/nn/rng.hpp"

using namespace gmap::nn;

TEST_CASE("dense with identity weight and zero bias is the identity") {
  ParamStore store;
  const int w = store.add("w", {3, 3}, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const int b = store.add("b", {3}, {0, 0, 0});
  auto y = dense(Tensor::constant({3}, {1, 2, 3}), store.leaf(w), store.leaf(b));
  CHECK(y.value()[0] == 1.0);
  CHECK(y.value()[1] == 2.0);
  CHECK(y.value()[2] == 3.0);
}

TEST_CASE("relu clamps negatives") {
  auto y = relu(Tensor::constant({3}, {-1, 0, 2}));
  CHECK(y.value()[0] == 0.0);
  CHECK(y.value()[1] == 0.0);
  CHECK(y.value()[2] == 2.0);
}

TEST_CASE("1x1 conv scales the image") {
  ParamStore store;
  const int w = store.add("w", {1, 1, 1, 1}, {2.0});
  const int b = store.add("b", {1}, {0.0});
  auto y = conv2d(Tensor::constant({1, 2, 2}, {1, 2, 3, 4}), store.leaf(w), store.leaf(b), 1, 0);
  CHECK(y.shape() == Shape{1, 2, 2});
  CHECK(y.value()[0] == 2.0);
  CHECK(y.value()[1] == 4.0);
  CHECK(y.value()[2] == 6.0);
  CHECK(y.value()[3] == 8.0);
}

TEST_CASE("conv2d matches a direct nested-loop convolution") {
  // 2 in channels, 3 out channels, 3x3 kernel, stride 2, padding 1 on 5x5
  Rng rng(11);
  const int C = 2, H = 5, W = 5, OC = 3, K = 3, S = 2, P = 1;
  std::vector<double> x(C * H * W), w(OC * C * K * K), b(OC);
  for (auto& v : x) v = rng.uniform(-1, 1);
  for (auto& v : w) v = rng.uniform(-1, 1);
  for (auto& v : b) v = rng.uniform(-1, 1);

  auto y = conv2d(Tensor::constant({C, H, W}, x),
                  Tensor::constant({OC, C, K, K}, w), Tensor::constant({OC}, b), S, P);
  const int OH = (H + 2 * P - K) / S + 1;
  REQUIRE(y.shape() == Shape{OC, OH, OH});

  for (int o = 0; o < OC; ++o) {
    for (int oy = 0; oy < OH; ++oy) {
      for (int ox = 0; ox < OH; ++ox) {
        double acc = b[o];
        for (int c = 0; c < C; ++c) {
          for (int kh = 0; kh < K; ++kh) {
            for (int kw = 0; kw < K; ++kw) {
              const int iy = oy * S + kh - P;
              const int ix = ox * S + kw - P;
              if (iy < 0 || iy >= H || ix < 0 || ix >= W) continue;
              acc += x[(c * H + iy) * W + ix] * w[((o * C + c) * K + kh) * K + kw];
            }
          }
        }
        CHECK(y.value()[(o * OH + oy) * OH + ox] == doctest::Approx(acc).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("transposed_conv2d matches the direct scatter definition") {
  Rng rng(12);
  const int C = 3, H = 4, W = 4, OC = 2, K = 4, S = 2, P = 1;
  std::vector<double> x(C * H * W), w(C * OC * K * K), b(OC);
  for (auto& v : x) v = rng.uniform(-1, 1);
  for (auto& v : w) v = rng.uniform(-1, 1);
  for (auto& v : b) v = rng.uniform(-1, 1);

  auto y = transposed_conv2d(Tensor::constant({C, H, W}, x),
                             Tensor::constant({C, OC, K, K}, w), Tensor::constant({OC}, b), S, P);
  const int OH = (H - 1) * S - 2 * P + K;
  REQUIRE(y.shape() == Shape{OC, OH, OH});

  std::vector<double> ref(OC * OH * OH, 0.0);
  for (int o = 0; o < OC; ++o) {
    for (int i = 0; i < OH * OH; ++i) ref[o * OH * OH + i] = b[o];
  }
  for (int c = 0; c < C; ++c) {
    for (int iy = 0; iy < H; ++iy) {
      for (int ix = 0; ix < W; ++ix) {
        for (int o = 0; o < OC; ++o) {
          for (int kh = 0; kh < K; ++kh) {
            for (int kw = 0; kw < K; ++kw) {
              const int oy = iy * S + kh - P;
              const int ox = ix * S + kw - P;
              if (oy < 0 || oy >= OH || ox < 0 || ox >= OH) continue;
              ref[(o * OH + oy) * OH + ox] +=
                  x[(c * H + iy) * W + ix] * w[((c * OC + o) * K + kh) * K + kw];
            }
          }
        }
      }
    }
  }
  for (int i = 0; i < OC * OH * OH; ++i) {
    CHECK(y.value()[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("shape errors name the layer") {
  ParamStore store;
  Rng rng(1);
  // 8x8 with kernel 3 stride 2 padding 0: (8 - 3) % 2 != 0
  CHECK_THROWS_WITH_AS(
      Network("net", {1, 8, 8}, {LayerSpec::Conv2d(1, 4, 3, 2, 0)}, store, rng),
      doctest::Contains("layer 0"), std::invalid_argument);

  ParamStore store2;
  Network ok("net", {4}, {LayerSpec::Dense(4, 2)}, store2, rng);
  CHECK_THROWS_AS(ok.forward(Tensor::constant({3}, {1, 2, 3}), store2), std::invalid_argument);
}

TEST_CASE("backward: linear loss") {
  ParamStore store;
  const int w = store.add("w", {1}, {3.0});
  auto loss = mul(store.leaf(w), Tensor::constant({1}, {2.0}));
  auto grads = backward(loss);
  CHECK(grads.at(w)[0] == 2.0);
}

TEST_CASE("backward: squared error hand chain rule") {
  // loss = sum((y - w*x)^2), w=1, x=1, y=2 -> dloss/dw = -2
  ParamStore store;
  const int w = store.add("w", {1}, {1.0});
  auto yhat = mul(store.leaf(w), Tensor::constant({1}, {1.0}));
  auto loss = sum(square(sub(Tensor::constant({1}, {2.0}), yhat)));
  auto grads = backward(loss);
  CHECK(grads.at(w)[0] == doctest::Approx(-2.0));
}

TEST_CASE("backward rejects non-scalar losses") {
  ParamStore store;
  const int w = store.add("w", {2}, {1.0, 2.0});
  CHECK_THROWS_AS(backward(scale(store.leaf(w), 2.0)), std::invalid_argument);
}

TEST_CASE("backward populates grad on every requires_grad tensor") {
  ParamStore store;
  const int w = store.add("w", {2}, {1.0, -0.5});
  auto leaf = store.leaf(w);
  auto mid = tanh(leaf);
  auto loss = sum(square(mid));
  CHECK(mid.grad().empty());
  backward(loss);
  CHECK(mid.requires_grad());
  REQUIRE(mid.grad().size() == 2);
  REQUIRE(leaf.grad().size() == 2);
  // d/dm of m^2 summed
  CHECK(mid.grad()[0] == doctest::Approx(2.0 * std::tanh(1.0)));
}

TEST_CASE("backward is linear in the loss") {
  auto run = [](double a, double b) {
    ParamStore store;
    const int w = store.add("w", {3}, {0.3, -0.7, 1.2});
    auto t = tanh(store.leaf(w));
    auto l1 = sum(square(t));
    auto l2 = sum(mul(t, Tensor::constant({3}, {1.0, 2.0, 3.0})));
    auto loss = add(scale(l1, a), scale(l2, b));
    return backward(loss).at(w);
  };
  const auto g10 = run(1, 0);
  const auto g01 = run(0, 1);
  const auto gmix = run(2.5, -1.5);
  for (int i = 0; i < 3; ++i) {
    CHECK(gmix[i] == doctest::Approx(2.5 * g10[i] - 1.5 * g01[i]).epsilon(1e-12));
  }
}

TEST_CASE("batch gradient equals the sum of per-sample gradients") {
  Rng rng(42);
  ParamStore store;
  Network net("n", {4}, {LayerSpec::Dense(4, 3), LayerSpec::Tanh(), LayerSpec::Dense(3, 1)},
              store, rng);
  std::vector<std::vector<double>> inputs;
  for (int s = 0; s < 3; ++s) {
    std::vector<double> in(4);
    for (auto& v : in) v = rng.uniform(-1, 1);
    inputs.push_back(in);
  }

  // batch loss as a single graph summing per-sample losses
  Tensor total;
  for (const auto& in : inputs) {
    auto l = sum(square(net.forward(Tensor::constant({4}, in), store)));
    total = total.defined() ? add(total, l) : l;
  }
  auto batch_grads = backward(total);

  // independent per-sample graphs
  std::unordered_map<int, std::vector<double>> summed;
  for (const auto& in : inputs) {
    auto g = backward(sum(square(net.forward(Tensor::constant({4}, in), store))));
    for (auto& [id, vec] : g) {
      auto [it, fresh] = summed.try_emplace(id, vec);
      if (!fresh) {
        for (std::size_t i = 0; i < vec.size(); ++i) it->second[i] += vec[i];
      }
    }
  }

  for (auto& [id, vec] : batch_grads) {
    REQUIRE(summed.count(id));
    for (std::size_t i = 0; i < vec.size(); ++i) {
      CHECK(vec[i] == doctest::Approx(summed[id][i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("forward is deterministic") {
  Rng rng(5);
  ParamStore store;
  Network net("n", {1, 8, 8},
              {LayerSpec::Conv2d(1, 2, 4, 2, 1), LayerSpec::LeakyRelu(0.2), LayerSpec::Flatten(),
               LayerSpec::Dense(32, 5)},
              store, rng);
  std::vector<double> img(64);
  for (auto& v : img) v = rng.uniform(0, 1);
  auto a = net.forward(Tensor::constant({1, 8, 8}, img), store);
  auto b = net.forward(Tensor::constant({1, 8, 8}, img), store);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.value()[i] == b.value()[i]);
}
