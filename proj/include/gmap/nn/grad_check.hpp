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

#include <functional>

#include "gmap/nn/network.hpp"

namespace gmap::nn {

// Scalar probe loss used by the checker: sum of squared outputs.
double probe_loss(const Network& net, const ParamStore& store, const Tensor& input);

// Compares reverse-mode gradients of the probe loss against central finite
// differences with step h, wiggling every parameter coordinate. Returns
//   max over coordinates of |autodiff - fd| / max(|fd|, 1e-8).
// Parameter values are restored on exit.
double gradient_check(const Network& net, ParamStore& store, const Tensor& input, double h);

// Same sweep for an arbitrary scalar-valued loss over the store.
double gradient_check_fn(ParamStore& store,
                         const std::function<Tensor(const ParamStore&)>& loss_builder, double h);

}  // namespace gmap::nn
