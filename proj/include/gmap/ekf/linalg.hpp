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

#include <vector>

namespace gmap::ekf {

// Row-major dense matrix, sized for filter work (6x6 up to d_z x d_z).
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0.0) {}
  static Mat identity(int n, double scale = 1.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  double at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
  const std::vector<double>& data() const { return a_; }

  Mat transposed() const;
  double trace() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Mat matmul(const Mat& a, const Mat& b);
Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat symmetrized(const Mat& a);  // (A + A^T) / 2

// Solves A X = B for symmetric positive definite A via Cholesky. Throws when
// a pivot collapses (singular / indefinite A).
Mat cholesky_solve(Mat a, Mat b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
std::vector<double> sym_eigenvalues(Mat s);

}  // namespace gmap::ekf
