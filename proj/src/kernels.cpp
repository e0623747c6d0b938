// Copyright 2026 The l1pca Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "l1pca/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace l1pca::kernels {
namespace {

// Accumulates s_i a_i a_i^T for rows [begin, end) into the upper triangle.
void accumulate_upper(const RowMatrix& a, const Vector* s, Index begin, Index end, Matrix& g) {
  const Index m = a.cols();
  for (Index i = begin; i < end; ++i) {
    const double* row = a.row(i).data();
    const double si = s ? (*s)[i] : 1.0;
    for (Index j = 0; j < m; ++j) {
      const double sij = si * row[j];
      if (sij == 0.0) continue;
      for (Index k = j; k < m; ++k) g(j, k) += sij * row[k];
    }
  }
}

void mirror_upper(Matrix& g) {
  for (Index j = 0; j < g.cols(); ++j)
    for (Index k = j + 1; k < g.cols(); ++k) g(k, j) = g(j, k);
}

Matrix blocked_gram(const RowMatrix& a, const Vector* s) {
  const Index n = a.rows();
  const Index m = a.cols();
  const Index blocks = (n + kRowBlock - 1) / kRowBlock;
  std::vector<Matrix> partial(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(static)
  for (Index b = 0; b < blocks; ++b) {
    Matrix g = Matrix::Zero(m, m);
    accumulate_upper(a, s, b * kRowBlock, std::min(n, (b + 1) * kRowBlock), g);
    partial[static_cast<std::size_t>(b)] = std::move(g);
  }

  Matrix g = Matrix::Zero(m, m);
  for (const auto& p : partial) g += p;
  mirror_upper(g);
  return g;
}

// Residual row sums for rows [begin, end) via one block product.
void residual_block(const RowMatrix& a, const Matrix& x, Index begin, Index end, RowResiduals& r) {
  const auto rows = a.middleRows(begin, end - begin);
  const RowMatrix e = rows - (rows * x) * x.transpose();
  for (Index i = 0; i < e.rows(); ++i) {
    r.abs_sum[begin + i] = e.row(i).cwiseAbs().sum();
    r.sq_sum[begin + i] = e.row(i).squaredNorm();
  }
}

}  // namespace

namespace serial {

Matrix weighted_gram(const RowMatrix& a, const Vector& s) {
  Matrix g = Matrix::Zero(a.cols(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < a.cols(); ++k) g(j, k) += s[i] * a(i, j) * a(i, k);
  return g;
}

Matrix gram(const RowMatrix& a) {
  return weighted_gram(a, Vector::Ones(a.rows()));
}

RowMatrix scale_rows(const RowMatrix& a, const Vector& w) {
  RowMatrix out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i) out.row(i) = std::sqrt(w[i]) * a.row(i);
  return out;
}

RowResiduals row_residuals(const RowMatrix& a, const Matrix& x) {
  const Matrix e = a - (a * x) * x.transpose();
  RowResiduals r{Vector(a.rows()), Vector(a.rows())};
  for (Index i = 0; i < a.rows(); ++i) {
    r.abs_sum[i] = e.row(i).cwiseAbs().sum();
    r.sq_sum[i] = e.row(i).squaredNorm();
  }
  return r;
}

}  // namespace serial

namespace parallel {

Matrix weighted_gram(const RowMatrix& a, const Vector& s) { return blocked_gram(a, &s); }

Matrix gram(const RowMatrix& a) { return blocked_gram(a, nullptr); }

RowMatrix scale_rows(const RowMatrix& a, const Vector& w) {
  RowMatrix out(a.rows(), a.cols());
  const Index n = a.rows();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const double f = std::sqrt(w[i]);
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = f * a(i, j);
  }
  return out;
}

RowResiduals row_residuals(const RowMatrix& a, const Matrix& x) {
  const Index n = a.rows();
  const Index blocks = (n + kRowBlock - 1) / kRowBlock;
  RowResiduals r{Vector(n), Vector(n)};
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < blocks; ++b) residual_block(a, x, b * kRowBlock, std::min(n, (b + 1) * kRowBlock), r);
  return r;
}

}  // namespace parallel

double ordered_sum(const Vector& v) {
  double s = 0.0;
  for (Index i = 0; i < v.size(); ++i) s += v[i];
  return s;
}

}  // namespace l1pca::kernels
