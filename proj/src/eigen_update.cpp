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

#include <cmath>
#include <string>

#include "l1pca/errors.hpp"
#include "l1pca/l1pca.hpp"
#include "l1pca/linalg.hpp"

namespace l1pca {
namespace {

// In place, columns in order. A column that loses almost all of its norm
// means the update has collapsed two directions.
void modified_gram_schmidt(Matrix& v) {
  for (Index k = 0; k < v.cols(); ++k) {
    for (Index j = 0; j < k; ++j) v.col(k) -= v.col(j).dot(v.col(k)) * v.col(j);
    const double norm = v.col(k).norm();
    if (!(norm > 1e-8)) throw DegenerateSpectrumError("eigenvector update lost rank");
    v.col(k) /= norm;
  }
}

}  // namespace

EigenpairSet eigenpair_update(const EigenpairSet& prev, const Matrix& delta, Index tracked,
                              double gap) {
  const Index m = prev.size();
  if (prev.vectors.rows() != m || prev.vectors.cols() != m)
    throw ParameterError("eigenpair set is not square");
  if (delta.rows() != m || delta.cols() != m)
    throw ParameterError("perturbation size does not match the eigenpair set");
  if (tracked < 0 || tracked > m) tracked = m;

  const Vector& lambda = prev.values;
  const double threshold = gap * (1.0 + lambda.cwiseAbs().maxCoeff());
  for (Index i = 0; i < tracked; ++i)
    for (Index j = 0; j < m; ++j)
      if (j != i && std::abs(lambda[i] - lambda[j]) < threshold)
        throw DegenerateSpectrumError("eigenvalues " + std::to_string(i) + " and " +
                                      std::to_string(j) + " are within " +
                                      std::to_string(threshold));

  // coupling(j, i) = v_j^T D v_i
  const Matrix coupling = prev.vectors.transpose() * delta * prev.vectors;

  Vector values(m);
  Matrix vectors = prev.vectors;
  for (Index i = 0; i < m; ++i) {
    values[i] = lambda[i] + coupling(i, i);
    for (Index j = 0; j < m; ++j) {
      if (j == i) continue;
      const double split = lambda[i] - lambda[j];
      if (std::abs(split) < threshold) continue;  // both untracked, see header
      vectors.col(i) += (coupling(j, i) / split) * prev.vectors.col(j);
    }
  }

  EigenpairSet sorted = linalg::sorted_eigenpairs(values, vectors);
  modified_gram_schmidt(sorted.vectors);
  linalg::apply_sign_convention(sorted.vectors);
  return sorted;
}

}  // namespace l1pca
