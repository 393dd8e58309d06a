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

#include "gmap/ekf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gmap::ekf {

namespace {

void check_same(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
  }
}

}  // namespace

Mat Mat::identity(int n, double scale) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = scale;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

double Mat::trace() const {
  double tr = 0.0;
  const int n = rows_ < cols_ ? rows_ : cols_;
  for (int i = 0; i < n; ++i) tr += at(i, i);
  return tr;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  Mat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

Mat add(const Mat& a, const Mat& b) {
  check_same(a, b, "add");
  Mat out = a;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) += b.at(r, c);
  }
  return out;
}

Mat sub(const Mat& a, const Mat& b) {
  check_same(a, b, "sub");
  Mat out = a;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) -= b.at(r, c);
  }
  return out;
}

Mat symmetrized(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetrized: square matrix required");
  Mat out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = 0.5 * (a.at(r, c) + a.at(c, r));
  }
  return out;
}

Mat cholesky_solve(Mat a, Mat b) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("cholesky_solve: square matrix required");
  if (b.rows() != n) throw std::invalid_argument("cholesky_solve: right-hand side mismatch");

  // in-place lower factor
  for (int j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (int k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::runtime_error("cholesky_solve: matrix is not positive definite");
    }
    const double ljj = std::sqrt(d);
    a.at(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
      a.at(i, j) = s / ljj;
    }
  }

  // L y = b, then L^T x = y, column by column
  for (int col = 0; col < b.cols(); ++col) {
    for (int i = 0; i < n; ++i) {
      double s = b.at(i, col);
      for (int k = 0; k < i; ++k) s -= a.at(i, k) * b.at(k, col);
      b.at(i, col) = s / a.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = b.at(i, col);
      for (int k = i + 1; k < n; ++k) s -= a.at(k, i) * b.at(k, col);
      b.at(i, col) = s / a.at(i, i);
    }
  }
  return b;
}

std::vector<double> sym_eigenvalues(Mat s) {
  const int n = s.rows();
  if (s.cols() != n) throw std::invalid_argument("sym_eigenvalues: square matrix required");

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::abs(s.at(p, q));
    }
    if (off < 1e-15) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = s.at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        const double theta = 0.5 * (s.at(q, q) - s.at(p, p)) / apq;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double skp = s.at(k, p);
          const double skq = s.at(k, q);
          s.at(k, p) = c * skp - sn * skq;
          s.at(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          const double spk = s.at(p, k);
          const double sqk = s.at(q, k);
          s.at(p, k) = c * spk - sn * sqk;
          s.at(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = s.at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace gmap::ekf
