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

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace l1pca {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Observation-major storage: one contiguous row per observation, which is
// what every per-row kernel walks.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// n x m observations-by-attributes matrix. Always non-empty and finite.
class DataMatrix {
 public:
  // Throws DataError on an empty or non-finite matrix.
  explicit DataMatrix(RowMatrix values);
  explicit DataMatrix(const Matrix& values) : DataMatrix(RowMatrix(values)) {}

  const RowMatrix& values() const { return values_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

  // Free-form provenance, e.g. the "#" lines of an instance file without the
  // leading marker.
  std::vector<std::string> metadata;
  // Optional; empty or exactly cols() entries.
  std::vector<std::string> column_names;

 private:
  RowMatrix values_;
};

// m x p matrix with orthonormal columns and a deterministic sign: in each
// column the entry of largest magnitude is positive (lowest row on ties).
class PrincipalComponents {
 public:
  // Applies the sign convention. Throws NumericalError if the columns are not
  // orthonormal to `orthonormality_tol`.
  explicit PrincipalComponents(Matrix loadings, double orthonormality_tol = 1e-10);

  const Matrix& loadings() const { return loadings_; }
  Index dim() const { return loadings_.rows(); }
  Index count() const { return loadings_.cols(); }

 private:
  Matrix loadings_;
};

// Full spectrum of a symmetric m x m matrix, eigenvalues descending, column
// k of `vectors` paired with `values[k]`.
struct EigenpairSet {
  Vector values;
  Matrix vectors;

  Index size() const { return values.size(); }
};

}  // namespace l1pca
