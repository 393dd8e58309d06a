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

#include "gmap/kern/kernels.hpp"

namespace gmap::kern {
namespace {

// Reference kernels. Reductions run strictly left to right; the equivalence
// tests and the golden-value tests are anchored to this ordering.

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scalar_k(const double* a, const double* b, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub_scalar_k(const double* a, const double* b, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void mul_scalar_k(const double* a, const double* b, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale_scalar(double a, const double* x, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a * x[i];
}

void relu_scalar(const double* x, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void leaky_relu_scalar(double slope, const double* x, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x[i] > 0.0 ? x[i] : slope * x[i];
}

void relu_grad_scalar(const double* x, const double* dy, double* dx, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > 0.0) dx[i] += dy[i];
  }
}

void leaky_relu_grad_scalar(double slope, const double* x, const double* dy, double* dx,
                            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dx[i] += x[i] > 0.0 ? dy[i] : slope * dy[i];
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      "scalar",          dot_scalar,   sum_scalar,        axpy_scalar,
      add_scalar_k,      sub_scalar_k, mul_scalar_k,      scale_scalar,
      relu_scalar,       leaky_relu_scalar, relu_grad_scalar, leaky_relu_grad_scalar,
  };
  return ops;
}

}  // namespace gmap::kern
