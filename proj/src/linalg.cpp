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

#include "l1pca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "l1pca/errors.hpp"
#include "l1pca/kernels.hpp"

namespace l1pca {

DataMatrix::DataMatrix(RowMatrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) throw DataError("data matrix is empty");
  if (!values_.allFinite()) throw DataError("data matrix has non-finite entries");
}

PrincipalComponents::PrincipalComponents(Matrix loadings, double orthonormality_tol)
    : loadings_(std::move(loadings)) {
  if (loadings_.cols() < 1 || loadings_.cols() > loadings_.rows())
    throw ParameterError("principal components need 1 <= p <= m");
  if (!loadings_.allFinite()) throw NumericalError("principal components are not finite");
  const Matrix gram = loadings_.transpose() * loadings_;
  const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > orthonormality_tol)
    throw NumericalError("principal components are not orthonormal (max deviation " +
                         std::to_string(err) + ")");
  linalg::apply_sign_convention(loadings_);
}

namespace linalg {

void apply_sign_convention(Matrix& vectors, double tie) {
  for (Index k = 0; k < vectors.cols(); ++k) {
    auto col = vectors.col(k);
    const double peak = col.cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    Index lead = 0;
    while (std::abs(col[lead]) < peak * (1.0 - tie)) ++lead;
    if (col[lead] < 0.0) col = -col;
  }
}

EigenpairSet sorted_eigenpairs(const Vector& values, const Matrix& vectors, const Tolerances& tol) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values[a] > values[b]; });
  EigenpairSet out{Vector(values.size()), Matrix(vectors.rows(), vectors.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[static_cast<Index>(k)] = values[order[k]];
    out.vectors.col(static_cast<Index>(k)) = vectors.col(order[k]);
  }
  apply_sign_convention(out.vectors, tol.sign_tie);
  return out;
}

EigenpairSet evd_full(const Matrix& b, const Tolerances& tol) {
  if (b.rows() != b.cols() || b.rows() < 1) throw ParameterError("evd_full needs a square matrix");
  if (!b.allFinite()) throw ParameterError("evd_full input has non-finite entries");
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  const double asym = (b - b.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.symmetry * scale)
    throw ParameterError("evd_full input is not symmetric (max |B - B^T| = " +
                         std::to_string(asym) + ")");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(b);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  // Exact ties keep the solver's column order (lowest index first).
  return sorted_eigenpairs(solver.eigenvalues(), solver.eigenvectors(), tol);
}

EigenpairSet gram_eigenpairs(const DataMatrix& a, const Tolerances& tol) {
  const Index n = a.rows();
  const Index m = a.cols();
  EigenpairSet pairs;
  if (n > m) {
    pairs = evd_full(kernels::parallel::gram(a.values()), tol);
  } else {
    Eigen::JacobiSVD<Matrix> svd(Matrix(a.values()), Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
    Vector values = Vector::Zero(m);
    values.head(svd.singularValues().size()) = svd.singularValues().cwiseAbs2();
    pairs = sorted_eigenpairs(values, svd.matrixV(), tol);
  }
  const double floor = -tol.negative_eigenvalue * std::max(1.0, pairs.values[0]);
  if (pairs.values.minCoeff() < floor)
    throw NumericalError("Gram matrix has a negative eigenvalue");
  return pairs;
}

PrincipalComponents leading_components(const EigenpairSet& pairs, Index p) {
  if (p < 1 || p > pairs.size())
    throw ParameterError("number of components p=" + std::to_string(p) + " must be in [1, " +
                         std::to_string(pairs.size()) + "]");
  return PrincipalComponents(pairs.vectors.leftCols(p));
}

PrincipalComponents l2pca(const DataMatrix& a, Index p) {
  if (p < 1 || p > a.cols())
    throw ParameterError("number of components p=" + std::to_string(p) + " must be in [1, " +
                         std::to_string(a.cols()) + "]");
  return leading_components(gram_eigenpairs(a), p);
}

Reconstruction reconstruction(const DataMatrix& a, const PrincipalComponents& x) {
  if (a.cols() != x.dim())
    throw ParameterError("data has " + std::to_string(a.cols()) + " columns but loadings have " +
                         std::to_string(x.dim()) + " rows");
  Reconstruction r;
  r.projected = a.values() * x.loadings();
  r.residual = a.values() - r.projected * x.loadings().transpose();
  return r;
}

double l2_objective(const DataMatrix& a, const PrincipalComponents& x) {
  return reconstruction(a, x).residual.squaredNorm();
}

}  // namespace linalg
}  // namespace l1pca
