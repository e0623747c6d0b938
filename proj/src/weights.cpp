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

#include <algorithm>
#include <cmath>
#include <string>

#include "l1pca/errors.hpp"
#include "l1pca/kernels.hpp"
#include "l1pca/l1pca.hpp"

namespace l1pca {

double l1_objective(const DataMatrix& a, const PrincipalComponents& x) {
  if (a.cols() != x.dim())
    throw ParameterError("data has " + std::to_string(a.cols()) + " columns but loadings have " +
                         std::to_string(x.dim()) + " rows");
  return kernels::ordered_sum(kernels::parallel::row_residuals(a.values(), x.loadings()).abs_sum);
}

DataMatrix weighted_matrix(const DataMatrix& a, const Vector& w) {
  if (w.size() != a.rows())
    throw ParameterError("weight vector has " + std::to_string(w.size()) + " entries, expected " +
                         std::to_string(a.rows()));
  for (Index i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0) || !std::isfinite(w[i]))
      throw ParameterError("weight " + std::to_string(i) + " is not a positive finite number");
  return DataMatrix(kernels::parallel::scale_rows(a.values(), w));
}

RawWeights raw_weights(const kernels::RowResiduals& rows, double zero_sq_norm) {
  const Index n = rows.abs_sum.size();
  RawWeights out{Vector(n), false};
  double largest = 0.0;
  bool any = false;
  for (Index i = 0; i < n; ++i) {
    if (rows.sq_sum[i] > zero_sq_norm && rows.sq_sum[i] > 0.0) {
      out.u[i] = rows.abs_sum[i] / rows.sq_sum[i];
      largest = any ? std::max(largest, out.u[i]) : out.u[i];
      any = true;
    } else {
      out.u[i] = -1.0;
    }
  }
  if (!any) {
    out.u.setOnes();
    out.all_zero = true;
    return out;
  }
  for (Index i = 0; i < n; ++i)
    if (out.u[i] < 0.0) out.u[i] = largest;
  return out;
}

RawWeights raw_weights(const Matrix& residual, double zero_norm) {
  if (!residual.allFinite()) throw ParameterError("residual matrix has non-finite entries");
  kernels::RowResiduals rows{residual.rowwise().lpNorm<1>(), residual.rowwise().squaredNorm()};
  return raw_weights(rows, zero_norm * zero_norm);
}

Vector damped_weights(const Vector& w, const Vector& u, double beta, int t) {
  if (w.size() != u.size()) throw ParameterError("weight vectors differ in length");
  if (t < 1) throw ParameterError("iteration index must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
  const double bt = std::pow(beta, t);
  Vector out(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    const double lo = w[i] * (1.0 - bt);
    const double hi = w[i] * (1.0 + bt);
    out[i] = u[i] < lo ? lo : (u[i] > hi ? hi : u[i]);
  }
  return out;
}

}  // namespace l1pca
