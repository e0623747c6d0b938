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

#pragma once

#include "l1pca/types.hpp"

// Data-parallel building blocks for the IRLS loops. Every kernel exists twice:
// `serial` is the straightforward reference used by tests and benchmarks,
// `parallel` is the OpenMP version the library calls. The parallel kernels
// reduce over fixed-size row blocks in block order, so their output is
// bitwise identical for any thread count.
namespace l1pca::kernels {

// Rows per reduction block in the parallel kernels.
inline constexpr Index kRowBlock = 256;

struct RowResiduals {
  Vector abs_sum;  // sum_j |e_ij|
  Vector sq_sum;   // sum_j e_ij^2
};

namespace serial {

// Upper and lower triangle of sum_i s_i a_i a_i^T.
Matrix weighted_gram(const RowMatrix& a, const Vector& s);
Matrix gram(const RowMatrix& a);
// Row i scaled by sqrt(w_i).
RowMatrix scale_rows(const RowMatrix& a, const Vector& w);
// Per-row statistics of E = A - A X X^T.
RowResiduals row_residuals(const RowMatrix& a, const Matrix& x);

}  // namespace serial

namespace parallel {

Matrix weighted_gram(const RowMatrix& a, const Vector& s);
Matrix gram(const RowMatrix& a);
RowMatrix scale_rows(const RowMatrix& a, const Vector& w);
RowResiduals row_residuals(const RowMatrix& a, const Matrix& x);

}  // namespace parallel

// Sum in index order; keeps objective values independent of thread count.
double ordered_sum(const Vector& v);

}  // namespace l1pca::kernels
