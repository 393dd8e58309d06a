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
#include <limits>

#include "doctest.h"

using namespace gmap::nn;

TEST_CASE("adam first step moves by about -lr for unit gradient") {
  ParamStore store;
  const int w = store.add("w", {1}, {1.0});
  Adam adam(store, {});
  store.at(w).grad = {1.0};
  adam.step(store);

  // closed form at t=1: mhat = vhat = g^2 = 1
  const double expected = 1.0 - 1e-4 * 1.0 / (1.0 + 1e-8);
  CHECK(store.at(w).value[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(store.at(w).value[0] == doctest::Approx(0.9999).epsilon(1e-7));
  CHECK(adam.step_count() == 1);
}

TEST_CASE("adam leaves parameters alone on zero gradients") {
  ParamStore store;
  const int w = store.add("w", {3}, {0.5, -0.25, 2.0});
  Adam adam(store, {});
  store.zero_grad();
  adam.step(store);
  CHECK(store.at(w).value[0] == 0.5);
  CHECK(store.at(w).value[1] == -0.25);
  CHECK(store.at(w).value[2] == 2.0);
}

TEST_CASE("two identical unit gradients move about -lr each") {
  ParamStore store;
  const int w = store.add("w", {1}, {1.0});
  Adam adam(store, {});

  store.at(w).grad = {1.0};
  adam.step(store);
  const double after1 = store.at(w).value[0];
  store.at(w).grad = {1.0};
  adam.step(store);
  const double after2 = store.at(w).value[0];

  // bias correction keeps mhat = vhat = 1 for constant unit gradients
  CHECK(1.0 - after1 == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK(after1 - after2 == doctest::Approx(1e-4).epsilon(1e-6));
}

TEST_CASE("adam rejects non-finite gradients naming the parameter") {
  ParamStore store;
  store.add("fine", {1}, {0.0});
  const int bad = store.add("exploded", {2}, {0.0, 0.0});
  Adam adam(store, {});
  store.at(bad).grad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(adam.step(store), doctest::Contains("exploded"), std::runtime_error);
}

TEST_CASE("global-norm clipping equals pre-scaling the gradients") {
  ParamStore clipped, plain;
  const int wc = clipped.add("w", {2}, {0.0, 0.0});
  const int wp = plain.add("w", {2}, {0.0, 0.0});
  AdamConfig cfg;
  cfg.grad_clip = 1.0;
  Adam a1(clipped, cfg);
  Adam a2(plain, {});

  // two steps so the moment buffers matter
  clipped.at(wc).grad = {30.0, 40.0};  // norm 50, factor 1/50
  plain.at(wp).grad = {0.6, 0.8};
  a1.step(clipped);
  a2.step(plain);
  clipped.at(wc).grad = {3.0, -4.0};  // norm 5, factor 1/5
  plain.at(wp).grad = {0.6, -0.8};
  a1.step(clipped);
  a2.step(plain);

  CHECK(clipped.at(wc).value[0] == doctest::Approx(plain.at(wp).value[0]).epsilon(1e-12));
  CHECK(clipped.at(wc).value[1] == doctest::Approx(plain.at(wp).value[1]).epsilon(1e-12));
}
