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

// Dense eigen/singular decompositions with a fixed ordering and sign
// convention, and the L2-PCA subproblem solved by the IRLS loops.
namespace l1pca::linalg {

struct Tolerances {
  // max |B - B^T| allowed, relative to max(1, max |B|).
  double symmetry = 1e-10;
  // Gram eigenvalues below -tol * max(1, lambda_max) are reported as failure.
  double negative_eigenvalue = 1e-10;
  // Relative magnitude within which two entries count as tied for the sign rule.
  double sign_tie = 1e-12;
};

// Flips each column so its largest-magnitude entry is positive; among entries
// tied within `tie` (relative), the lowest row index decides. Idempotent.
void apply_sign_convention(Matrix& vectors, double tie = Tolerances{}.sign_tie);

// Sorts pairs by descending eigenvalue (stable, so exact ties keep their
// incoming order) and applies the sign convention.
EigenpairSet sorted_eigenpairs(const Vector& values, const Matrix& vectors,
                               const Tolerances& tol = {});

// Full eigendecomposition of a symmetric matrix.
// Throws ParameterError if `b` is not square/symmetric/finite and
// NumericalError if the solver does not converge.
EigenpairSet evd_full(const Matrix& b, const Tolerances& tol = {});

// Eigenpairs of A^T A. Uses the m x m Gram matrix when n > m and the SVD of A
// otherwise; both paths produce the same ordering and signs.
EigenpairSet gram_eigenpairs(const DataMatrix& a, const Tolerances& tol = {});

// First p eigenvector columns as principal components.
PrincipalComponents leading_components(const EigenpairSet& pairs, Index p);

// Top-p principal components of A: the minimizer of ||A - A X X^T||_F^2 over
// orthonormal m x p matrices X. Throws ParameterError unless 1 <= p <= m.
PrincipalComponents l2pca(const DataMatrix& a, Index p);

struct Reconstruction {
  Matrix projected;  // Y = A X, n x p
  Matrix residual;   // E = A - Y X^T, n x m
};

Reconstruction reconstruction(const DataMatrix& a, const PrincipalComponents& x);

// ||A - A X X^T||_F^2
double l2_objective(const DataMatrix& a, const PrincipalComponents& x);

}  // namespace l1pca::linalg
