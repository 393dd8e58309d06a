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
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "gmap/kern/kernels.hpp"

namespace gmap::nn {

namespace {

const kern::Ops& K() { return kern::active(); }

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    fail(std::string(op) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
         shape_str(b.shape()));
  }
}

NodePtr make_node(Shape shape, std::vector<double> values) {
  auto n = std::make_shared<Node>();
  n->shape = std::move(shape);
  n->size = values.size();
  n->storage = std::move(values);
  n->data = n->storage.data();
  return n;
}

NodePtr make_node_sized(Shape shape) {
  auto n = std::make_shared<Node>();
  n->shape = std::move(shape);
  n->size = numel(n->shape);
  n->storage.assign(n->size, 0.0);
  n->data = n->storage.data();
  return n;
}

void ensure_grad(Node& n) {
  if (n.grad.size() != n.size) n.grad.assign(n.size, 0.0);
}

// dst[i] += a[i] * b[i]
void mul_accum(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * b[i];
}

Tensor unary_elementwise(const Tensor& x, void (*fwd)(const double*, double*, std::size_t),
                         void (*bwd)(const double* x, const double* y, const double* dy,
                                     double* dx, std::size_t)) {
  auto n = make_node_sized(x.shape());
  fwd(x.value().data(), n->storage.data(), n->size);
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [bwd](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      bwd(p.data, self.data, self.grad.data(), p.grad.data(), self.size);
    };
  }
  return Tensor(n);
}

}  // namespace

std::size_t numel(const Shape& shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d <= 0) fail("shape dimensions must be positive, got " + shape_str(shape));
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

std::string shape_str(const Shape& shape) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << "]";
  return os.str();
}

Tensor Tensor::constant(Shape shape, std::vector<double> values) {
  if (numel(shape) != values.size()) {
    fail("constant: " + std::to_string(values.size()) + " values for shape " + shape_str(shape));
  }
  return Tensor(make_node(std::move(shape), std::move(values)));
}

Tensor Tensor::scalar(double v) { return constant({1}, {v}); }

Tensor Tensor::param(Shape shape, const double* values, int param_id) {
  auto n = std::make_shared<Node>();
  n->shape = std::move(shape);
  n->size = numel(n->shape);
  n->data = values;
  n->requires_grad = true;
  n->param_id = param_id;
  return Tensor(n);
}

double Tensor::item() const {
  if (size() != 1) fail("item: tensor has shape " + shape_str(shape()) + ", expected a scalar");
  return node_->data[0];
}

std::unordered_map<int, std::vector<double>> backward(const Tensor& loss) {
  if (!loss.defined()) fail("backward: undefined tensor");
  if (loss.size() != 1) {
    fail("backward requires a scalar loss, got shape " + shape_str(loss.shape()));
  }

  // iterative post-order over parents
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack;
  stack.emplace_back(loss.node(), 0);
  visited.insert(loss.node());
  while (!stack.empty()) {
    auto& [node, idx] = stack.back();
    if (idx < node->parents.size()) {
      Node* parent = node->parents[idx++].get();
      if (visited.insert(parent).second) stack.emplace_back(parent, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (Node* n : order) {
    if (n->requires_grad) ensure_grad(*n);
  }
  Node* root = loss.node();
  root->requires_grad = true;
  ensure_grad(*root);
  root->grad[0] = 1.0;

  // reverse topological order
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->requires_grad && n->backward_fn) n->backward_fn(*n);
  }

  std::unordered_map<int, std::vector<double>> grads;
  for (Node* n : order) {
    if (n->param_id >= 0) {
      auto [it, inserted] = grads.try_emplace(n->param_id, n->grad);
      if (!inserted) K().add(it->second.data(), n->grad.data(), it->second.data(), n->size);
    }
  }
  return grads;
}

// ---------------------------------------------------------------------------
// elementwise / reduction ops

Tensor add(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "add");
  auto n = make_node_sized(a.shape());
  K().add(a.value().data(), b.value().data(), n->storage.data(), n->size);
  n->requires_grad = a.requires_grad() || b.requires_grad();
  if (n->requires_grad) {
    n->parents = {a.handle(), b.handle()};
    n->backward_fn = [](Node& self) {
      for (auto& p : self.parents) {
        if (!p->requires_grad) continue;
        ensure_grad(*p);
        K().add(p->grad.data(), self.grad.data(), p->grad.data(), self.size);
      }
    };
  }
  return Tensor(n);
}

Tensor sub(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "sub");
  auto n = make_node_sized(a.shape());
  K().sub(a.value().data(), b.value().data(), n->storage.data(), n->size);
  n->requires_grad = a.requires_grad() || b.requires_grad();
  if (n->requires_grad) {
    n->parents = {a.handle(), b.handle()};
    n->backward_fn = [](Node& self) {
      Node& pa = *self.parents[0];
      Node& pb = *self.parents[1];
      if (pa.requires_grad) {
        ensure_grad(pa);
        K().add(pa.grad.data(), self.grad.data(), pa.grad.data(), self.size);
      }
      if (pb.requires_grad) {
        ensure_grad(pb);
        K().axpy(-1.0, self.grad.data(), pb.grad.data(), self.size);
      }
    };
  }
  return Tensor(n);
}

Tensor mul(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "mul");
  auto n = make_node_sized(a.shape());
  K().mul(a.value().data(), b.value().data(), n->storage.data(), n->size);
  n->requires_grad = a.requires_grad() || b.requires_grad();
  if (n->requires_grad) {
    n->parents = {a.handle(), b.handle()};
    n->backward_fn = [](Node& self) {
      Node& pa = *self.parents[0];
      Node& pb = *self.parents[1];
      if (pa.requires_grad) {
        ensure_grad(pa);
        mul_accum(pa.grad.data(), self.grad.data(), pb.data, self.size);
      }
      if (pb.requires_grad) {
        ensure_grad(pb);
        mul_accum(pb.grad.data(), self.grad.data(), pa.data, self.size);
      }
    };
  }
  return Tensor(n);
}

Tensor scale(const Tensor& x, double a) {
  auto n = make_node_sized(x.shape());
  K().scale(a, x.value().data(), n->storage.data(), n->size);
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [a](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      K().axpy(a, self.grad.data(), p.grad.data(), self.size);
    };
  }
  return Tensor(n);
}

Tensor add_const(const Tensor& x, double c) {
  auto n = make_node_sized(x.shape());
  const double* src = x.value().data();
  for (std::size_t i = 0; i < n->size; ++i) n->storage[i] = src[i] + c;
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      K().add(p.grad.data(), self.grad.data(), p.grad.data(), self.size);
    };
  }
  return Tensor(n);
}

Tensor exp(const Tensor& x) {
  return unary_elementwise(
      x,
      [](const double* in, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(in[i]);
      },
      [](const double*, const double* y, const double* dy, double* dx, std::size_t n) {
        mul_accum(dx, dy, y, n);
      });
}

Tensor tanh(const Tensor& x) {
  return unary_elementwise(
      x,
      [](const double* in, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::tanh(in[i]);
      },
      [](const double*, const double* y, const double* dy, double* dx, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) dx[i] += dy[i] * (1.0 - y[i] * y[i]);
      });
}

Tensor sigmoid(const Tensor& x) {
  return unary_elementwise(
      x,
      [](const double* in, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + std::exp(-in[i]));
      },
      [](const double*, const double* y, const double* dy, double* dx, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) dx[i] += dy[i] * y[i] * (1.0 - y[i]);
      });
}

Tensor relu(const Tensor& x) {
  auto n = make_node_sized(x.shape());
  K().relu(x.value().data(), n->storage.data(), n->size);
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      K().relu_grad(p.data, self.grad.data(), p.grad.data(), self.size);
    };
  }
  return Tensor(n);
}

Tensor leaky_relu(const Tensor& x, double slope) {
  auto n = make_node_sized(x.shape());
  K().leaky_relu(slope, x.value().data(), n->storage.data(), n->size);
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [slope](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      K().leaky_relu_grad(slope, p.data, self.grad.data(), p.grad.data(), self.size);
    };
  }
  return Tensor(n);
}

Tensor clamp(const Tensor& x, double lo, double hi) {
  if (!(lo < hi)) fail("clamp: lo must be < hi");
  auto n = make_node_sized(x.shape());
  const double* src = x.value().data();
  for (std::size_t i = 0; i < n->size; ++i) {
    n->storage[i] = src[i] < lo ? lo : (src[i] > hi ? hi : src[i]);
  }
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [lo, hi](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      for (std::size_t i = 0; i < self.size; ++i) {
        if (p.data[i] > lo && p.data[i] < hi) p.grad[i] += self.grad[i];
      }
    };
  }
  return Tensor(n);
}

Tensor square(const Tensor& x) {
  auto n = make_node_sized(x.shape());
  K().mul(x.value().data(), x.value().data(), n->storage.data(), n->size);
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      for (std::size_t i = 0; i < self.size; ++i) p.grad[i] += 2.0 * p.data[i] * self.grad[i];
    };
  }
  return Tensor(n);
}

Tensor sum(const Tensor& x) {
  auto n = make_node(Shape{1}, {K().sum(x.value().data(), x.size())});
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      const double g = self.grad[0];
      for (std::size_t i = 0; i < p.size; ++i) p.grad[i] += g;
    };
  }
  return Tensor(n);
}

// ---------------------------------------------------------------------------
// structure ops

Tensor reshape(const Tensor& x, Shape target) {
  if (numel(target) != x.size()) {
    fail("reshape: cannot view " + shape_str(x.shape()) + " as " + shape_str(target));
  }
  auto n = make_node(std::move(target), std::vector<double>(x.value().begin(), x.value().end()));
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      K().add(p.grad.data(), self.grad.data(), p.grad.data(), self.size);
    };
  }
  return Tensor(n);
}

Tensor flatten(const Tensor& x) { return reshape(x, {static_cast<int>(x.size())}); }

Tensor slice(const Tensor& x, std::size_t offset, std::size_t len) {
  if (x.shape().size() != 1) fail("slice: only 1-D tensors, got " + shape_str(x.shape()));
  if (offset + len > x.size()) fail("slice: out of range");
  auto n = make_node(Shape{static_cast<int>(len)},
                     std::vector<double>(x.value().begin() + offset, x.value().begin() + offset + len));
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [offset](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      K().add(p.grad.data() + offset, self.grad.data(), p.grad.data() + offset, self.size);
    };
  }
  return Tensor(n);
}

// ---------------------------------------------------------------------------
// dense

Tensor dense(const Tensor& x, const Tensor& w, const Tensor& b) {
  if (x.shape().size() != 1) fail("dense: input must be 1-D, got " + shape_str(x.shape()));
  if (w.shape().size() != 2) fail("dense: weight must be 2-D, got " + shape_str(w.shape()));
  const int out = w.shape()[0];
  const int in = w.shape()[1];
  if (x.shape()[0] != in) {
    fail("dense: input size " + std::to_string(x.shape()[0]) + " != weight columns " +
         std::to_string(in));
  }
  if (b.shape() != Shape{out}) fail("dense: bias shape " + shape_str(b.shape()));

  auto n = make_node_sized({out});
  const double* xv = x.value().data();
  const double* wv = w.value().data();
  const double* bv = b.value().data();
  for (int o = 0; o < out; ++o) {
    n->storage[o] = K().dot(wv + std::size_t(o) * in, xv, in) + bv[o];
  }
  n->requires_grad = x.requires_grad() || w.requires_grad() || b.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle(), w.handle(), b.handle()};
    n->backward_fn = [out, in](Node& self) {
      Node& px = *self.parents[0];
      Node& pw = *self.parents[1];
      Node& pb = *self.parents[2];
      const double* dy = self.grad.data();
      if (pb.requires_grad) {
        ensure_grad(pb);
        K().add(pb.grad.data(), dy, pb.grad.data(), out);
      }
      if (pw.requires_grad) {
        ensure_grad(pw);
        for (int o = 0; o < out; ++o) {
          K().axpy(dy[o], px.data, pw.grad.data() + std::size_t(o) * in, in);
        }
      }
      if (px.requires_grad) {
        ensure_grad(px);
        for (int o = 0; o < out; ++o) {
          K().axpy(dy[o], pw.data + std::size_t(o) * in, px.grad.data(), in);
        }
      }
    };
  }
  return Tensor(n);
}

// ---------------------------------------------------------------------------
// convolutions (im2col / col2im formulation)

namespace {

struct ConvDims {
  int channels, height, width;
  int kernel, stride, padding;
  int out_h, out_w;
  std::size_t patch_rows() const {
    return std::size_t(channels) * kernel * kernel;
  }
  std::size_t patch_cols() const { return std::size_t(out_h) * out_w; }
};

ConvDims conv_dims(const Shape& x, int kernel, int stride, int padding, const char* op) {
  if (x.size() != 3) fail(std::string(op) + ": input must be [C,H,W], got " + shape_str(x));
  if (kernel <= 0 || stride <= 0 || padding < 0) {
    fail(std::string(op) + ": invalid kernel/stride/padding");
  }
  ConvDims d{x[0], x[1], x[2], kernel, stride, padding, 0, 0};
  const int eh = d.height + 2 * padding - kernel;
  const int ew = d.width + 2 * padding - kernel;
  if (eh < 0 || ew < 0 || eh % stride != 0 || ew % stride != 0) {
    fail(std::string(op) + ": kernel " + std::to_string(kernel) + " stride " +
         std::to_string(stride) + " padding " + std::to_string(padding) +
         " does not tile input " + shape_str(x));
  }
  d.out_h = eh / stride + 1;
  d.out_w = ew / stride + 1;
  return d;
}

// patches[r, q] with r = (c*K + kh)*K + kw and q = oy*out_w + ox
void im2col(const double* x, const ConvDims& d, double* patches) {
  const std::size_t cols = d.patch_cols();
  std::size_t r = 0;
  for (int c = 0; c < d.channels; ++c) {
    const double* xc = x + std::size_t(c) * d.height * d.width;
    for (int kh = 0; kh < d.kernel; ++kh) {
      for (int kw = 0; kw < d.kernel; ++kw, ++r) {
        double* row = patches + r * cols;
        for (int oy = 0; oy < d.out_h; ++oy) {
          const int iy = oy * d.stride + kh - d.padding;
          double* dst = row + std::size_t(oy) * d.out_w;
          if (iy < 0 || iy >= d.height) {
            for (int ox = 0; ox < d.out_w; ++ox) dst[ox] = 0.0;
            continue;
          }
          const double* src = xc + std::size_t(iy) * d.width;
          for (int ox = 0; ox < d.out_w; ++ox) {
            const int ix = ox * d.stride + kw - d.padding;
            dst[ox] = (ix >= 0 && ix < d.width) ? src[ix] : 0.0;
          }
        }
      }
    }
  }
}

// scatter-add transpose of im2col: x[c, iy, ix] += patches[r, q]
void col2im_add(const double* patches, const ConvDims& d, double* x) {
  const std::size_t cols = d.patch_cols();
  std::size_t r = 0;
  for (int c = 0; c < d.channels; ++c) {
    double* xc = x + std::size_t(c) * d.height * d.width;
    for (int kh = 0; kh < d.kernel; ++kh) {
      for (int kw = 0; kw < d.kernel; ++kw, ++r) {
        const double* row = patches + r * cols;
        for (int oy = 0; oy < d.out_h; ++oy) {
          const int iy = oy * d.stride + kh - d.padding;
          if (iy < 0 || iy >= d.height) continue;
          double* dst = xc + std::size_t(iy) * d.width;
          const double* src = row + std::size_t(oy) * d.out_w;
          for (int ox = 0; ox < d.out_w; ++ox) {
            const int ix = ox * d.stride + kw - d.padding;
            if (ix >= 0 && ix < d.width) dst[ix] += src[ox];
          }
        }
      }
    }
  }
}

}  // namespace

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int padding) {
  if (w.shape().size() != 4 || w.shape()[2] != w.shape()[3]) {
    fail("conv2d: weight must be [OC,C,K,K], got " + shape_str(w.shape()));
  }
  const ConvDims d = conv_dims(x.shape(), w.shape()[2], stride, padding, "conv2d");
  const int oc = w.shape()[0];
  if (w.shape()[1] != d.channels) {
    fail("conv2d: weight expects " + std::to_string(w.shape()[1]) + " input channels, input has " +
         std::to_string(d.channels));
  }
  if (b.shape() != Shape{oc}) fail("conv2d: bias shape " + shape_str(b.shape()));

  const std::size_t rows = d.patch_rows();
  const std::size_t cols = d.patch_cols();
  auto patches = std::make_shared<std::vector<double>>(rows * cols);
  im2col(x.value().data(), d, patches->data());

  auto n = make_node_sized({oc, d.out_h, d.out_w});
  const double* wv = w.value().data();
  const double* bv = b.value().data();
  for (int o = 0; o < oc; ++o) {
    double* yrow = n->storage.data() + std::size_t(o) * cols;
    for (std::size_t q = 0; q < cols; ++q) yrow[q] = bv[o];
    for (std::size_t r = 0; r < rows; ++r) {
      K().axpy(wv[std::size_t(o) * rows + r], patches->data() + r * cols, yrow, cols);
    }
  }

  n->requires_grad = x.requires_grad() || w.requires_grad() || b.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle(), w.handle(), b.handle()};
    n->backward_fn = [d, oc, rows, cols, patches](Node& self) {
      Node& px = *self.parents[0];
      Node& pw = *self.parents[1];
      Node& pb = *self.parents[2];
      const double* dy = self.grad.data();
      if (pb.requires_grad) {
        ensure_grad(pb);
        for (int o = 0; o < oc; ++o) pb.grad[o] += K().sum(dy + std::size_t(o) * cols, cols);
      }
      if (pw.requires_grad) {
        ensure_grad(pw);
        for (int o = 0; o < oc; ++o) {
          const double* dyrow = dy + std::size_t(o) * cols;
          double* dwrow = pw.grad.data() + std::size_t(o) * rows;
          for (std::size_t r = 0; r < rows; ++r) {
            dwrow[r] += K().dot(dyrow, patches->data() + r * cols, cols);
          }
        }
      }
      if (px.requires_grad) {
        ensure_grad(px);
        std::vector<double> dpatches(rows * cols, 0.0);
        for (int o = 0; o < oc; ++o) {
          const double* dyrow = dy + std::size_t(o) * cols;
          for (std::size_t r = 0; r < rows; ++r) {
            K().axpy(pw.data[std::size_t(o) * rows + r], dyrow, dpatches.data() + r * cols, cols);
          }
        }
        col2im_add(dpatches.data(), d, px.grad.data());
      }
    };
  }
  return Tensor(n);
}

Tensor transposed_conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride,
                         int padding) {
  if (x.shape().size() != 3) {
    fail("transposed_conv2d: input must be [C,H,W], got " + shape_str(x.shape()));
  }
  if (w.shape().size() != 4 || w.shape()[2] != w.shape()[3]) {
    fail("transposed_conv2d: weight must be [C,OC,K,K], got " + shape_str(w.shape()));
  }
  const int ic = x.shape()[0];
  const int ih = x.shape()[1];
  const int iw = x.shape()[2];
  const int oc = w.shape()[1];
  const int kernel = w.shape()[2];
  if (w.shape()[0] != ic) {
    fail("transposed_conv2d: weight expects " + std::to_string(w.shape()[0]) +
         " input channels, input has " + std::to_string(ic));
  }
  if (b.shape() != Shape{oc}) fail("transposed_conv2d: bias shape " + shape_str(b.shape()));
  if (kernel <= 0 || stride <= 0 || padding < 0) {
    fail("transposed_conv2d: invalid kernel/stride/padding");
  }
  const int oh = (ih - 1) * stride - 2 * padding + kernel;
  const int ow = (iw - 1) * stride - 2 * padding + kernel;
  if (oh < 1 || ow < 1) fail("transposed_conv2d: output collapses to zero size");

  // The output plays the conv input role: patches over [OC, oh, ow] land on
  // the (ih, iw) grid.
  ConvDims d{oc, oh, ow, kernel, stride, padding, ih, iw};
  const std::size_t rows = d.patch_rows();   // OC*K*K
  const std::size_t cols = d.patch_cols();   // ih*iw

  std::vector<double> spread(rows * cols, 0.0);
  const double* xv = x.value().data();
  const double* wv = w.value().data();
  for (int c = 0; c < ic; ++c) {
    const double* xc = xv + std::size_t(c) * cols;
    const double* wrow = wv + std::size_t(c) * rows;
    for (std::size_t r = 0; r < rows; ++r) {
      K().axpy(wrow[r], xc, spread.data() + r * cols, cols);
    }
  }

  auto n = make_node_sized({oc, oh, ow});
  col2im_add(spread.data(), d, n->storage.data());
  const double* bv = b.value().data();
  for (int o = 0; o < oc; ++o) {
    double* ch = n->storage.data() + std::size_t(o) * oh * ow;
    for (int i = 0; i < oh * ow; ++i) ch[i] += bv[o];
  }

  n->requires_grad = x.requires_grad() || w.requires_grad() || b.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle(), w.handle(), b.handle()};
    n->backward_fn = [d, ic, oc, oh, ow, rows, cols](Node& self) {
      Node& px = *self.parents[0];
      Node& pw = *self.parents[1];
      Node& pb = *self.parents[2];
      const double* dy = self.grad.data();
      if (pb.requires_grad) {
        ensure_grad(pb);
        for (int o = 0; o < oc; ++o) {
          pb.grad[o] += K().sum(dy + std::size_t(o) * oh * ow, std::size_t(oh) * ow);
        }
      }
      const bool need_dx = px.requires_grad;
      const bool need_dw = pw.requires_grad;
      if (need_dx || need_dw) {
        std::vector<double> dspread(rows * cols);
        im2col(dy, d, dspread.data());
        if (need_dw) {
          ensure_grad(pw);
          for (int c = 0; c < ic; ++c) {
            const double* xc = px.data + std::size_t(c) * cols;
            double* dwrow = pw.grad.data() + std::size_t(c) * rows;
            for (std::size_t r = 0; r < rows; ++r) {
              dwrow[r] += K().dot(xc, dspread.data() + r * cols, cols);
            }
          }
        }
        if (need_dx) {
          ensure_grad(px);
          for (int c = 0; c < ic; ++c) {
            double* dxc = px.grad.data() + std::size_t(c) * cols;
            const double* wrow = pw.data + std::size_t(c) * rows;
            for (std::size_t r = 0; r < rows; ++r) {
              K().axpy(wrow[r], dspread.data() + r * cols, dxc, cols);
            }
          }
        }
      }
    };
  }
  return Tensor(n);
}

Tensor custom_unary(
    const Tensor& x, std::function<std::vector<double>(std::span<const double>)> fwd,
    std::function<void(std::span<const double>, std::span<const double>, std::span<double>)> bwd) {
  auto values = fwd(x.value());
  if (values.size() != x.size()) fail("custom_unary: forward changed element count");
  auto n = make_node(x.shape(), std::move(values));
  n->requires_grad = x.requires_grad();
  if (n->requires_grad) {
    n->parents = {x.handle()};
    n->backward_fn = [bwd = std::move(bwd)](Node& self) {
      Node& p = *self.parents[0];
      ensure_grad(p);
      bwd({p.data, p.size}, {self.grad.data(), self.size}, {p.grad.data(), p.size});
    };
  }
  return Tensor(n);
}

}  // namespace gmap::nn
