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
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gmap::nn {

using Shape = std::vector<int>;

std::size_t numel(const Shape& shape);
std::string shape_str(const Shape& shape);

// One node of a reverse-mode tape. Graphs are built per forward pass and are
// single-use: run the forward ops, call backward(loss) once, drop the graph.
// Parameter leaves borrow their value buffer from the owning ParamStore, so a
// graph must not outlive the store it was built against.
struct Node {
  Shape shape;
  std::size_t size = 0;
  std::vector<double> storage;    // owned values; empty for borrowing leaves
  const double* data = nullptr;   // points into storage or the borrowed buffer
  std::vector<double> grad;       // sized during backward
  bool requires_grad = false;
  int param_id = -1;              // >= 0 marks a parameter leaf
  std::vector<std::shared_ptr<Node>> parents;
  // Accumulates this node's grad into its parents' grads.
  std::function<void(Node&)> backward_fn;
};

using NodePtr = std::shared_ptr<Node>;

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(NodePtr node) : node_(std::move(node)) {}

  static Tensor constant(Shape shape, std::vector<double> values);
  static Tensor scalar(double v);
  // Borrows `values` (length must equal numel(shape)); caller keeps it alive.
  static Tensor param(Shape shape, const double* values, int param_id);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t size() const { return node_->size; }
  std::span<const double> value() const { return {node_->data, node_->size}; }
  // Empty until backward() has run over this node.
  std::span<const double> grad() const { return {node_->grad.data(), node_->grad.size()}; }
  bool requires_grad() const { return node_->requires_grad; }
  double item() const;

  Node* node() const { return node_.get(); }
  const NodePtr& handle() const { return node_; }

 private:
  NodePtr node_;
};

// Reverse-mode sweep from a scalar loss. Populates grad on every reachable
// node with requires_grad and returns the gradients of all parameter leaves,
// keyed by param id (summed if a parameter appears more than once).
std::unordered_map<int, std::vector<double>> backward(const Tensor& loss);

// ---- elementwise / reduction ops ----
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& x, double a);
Tensor add_const(const Tensor& x, double c);
Tensor exp(const Tensor& x);
Tensor tanh(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor relu(const Tensor& x);
Tensor leaky_relu(const Tensor& x, double slope);
// gradient passes through strictly inside (lo, hi), zero outside
Tensor clamp(const Tensor& x, double lo, double hi);
Tensor square(const Tensor& x);
Tensor sum(const Tensor& x);  // -> shape {1}

// ---- structure ops ----
Tensor reshape(const Tensor& x, Shape target);
Tensor flatten(const Tensor& x);
Tensor slice(const Tensor& x, std::size_t offset, std::size_t len);  // 1-D only

// ---- parametric layers ----
// x: [in], w: [out, in], b: [out]
Tensor dense(const Tensor& x, const Tensor& w, const Tensor& b);
// x: [C, H, W], w: [OC, C, K, K], b: [OC]; (H + 2p - K) must be divisible by s
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int padding);
// x: [C, H, W], w: [C, OC, K, K], b: [OC]; output (H-1)s - 2p + K
Tensor transposed_conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride,
                         int padding);

// Escape hatch for bespoke differentiable ops (also lets tests wire up a
// deliberately wrong backward rule to exercise the gradient checker).
Tensor custom_unary(
    const Tensor& x, std::function<std::vector<double>(std::span<const double>)> fwd,
    std::function<void(std::span<const double> x, std::span<const double> dy, std::span<double> dx)>
        bwd);

}  // namespace gmap::nn
