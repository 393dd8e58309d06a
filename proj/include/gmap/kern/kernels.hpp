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

#include <cstddef>
#include <string_view>

namespace gmap::kern {

// Double-precision kernels behind the network math. Two implementations are
// shipped: a scalar reference and an AVX2/FMA variant. The variant in use is
// picked once at startup (GMAP_KERNELS env var or CPU detection).
//
// Contract between the variants:
//   - elementwise kernels (add .. leaky_relu_grad) produce bit-identical
//     results in every variant;
//   - reductions (dot, sum) may associate differently and are only required
//     to agree within normal floating-point reassociation error.
struct Ops {
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* x, std::size_t n);

  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  // dst may alias a or b
  void (*add)(const double* a, const double* b, double* dst, std::size_t n);
  void (*sub)(const double* a, const double* b, double* dst, std::size_t n);
  void (*mul)(const double* a, const double* b, double* dst, std::size_t n);
  void (*scale)(double a, const double* x, double* dst, std::size_t n);

  void (*relu)(const double* x, double* dst, std::size_t n);
  void (*leaky_relu)(double slope, const double* x, double* dst, std::size_t n);
  // dx += dy * d(activation)/dx, evaluated at the pre-activation x
  void (*relu_grad)(const double* x, const double* dy, double* dx, std::size_t n);
  void (*leaky_relu_grad)(double slope, const double* x, const double* dy, double* dx,
                          std::size_t n);
};

const Ops& scalar_ops();

// True when the AVX2 variant is compiled in and the CPU supports AVX2+FMA.
bool avx2_available();
const Ops& avx2_ops();

// Active variant. Resolution order: gmap::kern::force() > GMAP_KERNELS env
// ("scalar", "avx2", "auto") > CPU detection.
const Ops& active();
std::string_view active_name();

// Overrides the active variant ("scalar", "avx2", "auto"). Not safe while
// kernels are running on other threads; intended for tests and startup code.
void force(std::string_view name);

}  // namespace gmap::kern
