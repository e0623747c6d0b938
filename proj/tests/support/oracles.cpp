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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace l1pca::testing {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = dist(gen);
  return out;
}

Matrix random_heavy_tailed(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::student_t_distribution<double> dist(2.0);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = dist(gen);
  return out;
}

Matrix random_orthonormal(Index m, Index p, std::uint64_t seed) {
  Matrix q = random_matrix(m, p, seed);
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j < k; ++j) q.col(k) -= q.col(j).dot(q.col(k)) * q.col(j);
    q.col(k).normalize();
  }
  return q;
}

Matrix random_symmetric(const Vector& eigenvalues, std::uint64_t seed) {
  const Matrix q = random_orthonormal(eigenvalues.size(), eigenvalues.size(), seed);
  Matrix s = q * eigenvalues.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

double brute_l1_objective(const Matrix& a, const Matrix& x) {
  double total = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      double rec = 0.0;
      for (Index k = 0; k < x.cols(); ++k) {
        double y = 0.0;
        for (Index l = 0; l < a.cols(); ++l) y += a(i, l) * x(l, k);
        rec += y * x(j, k);
      }
      total += std::abs(a(i, j) - rec);
    }
  }
  return total;
}

Eigensystem jacobi_eigen(const Matrix& sym, double tol, int max_sweeps) {
  const Index m = sym.rows();
  Matrix a = sym;
  Matrix v = Matrix::Identity(m, m);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Index i = 0; i < m; ++i)
      for (Index j = i + 1; j < m; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= tol * std::max(1.0, a.norm())) break;
    for (Index p = 0; p < m; ++p) {
      for (Index q = p + 1; q < m; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Index k = 0; k < m; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index x, Index y) { return a(x, x) > a(y, y); });
  Eigensystem out{Vector(m), Matrix(m, m)};
  for (Index k = 0; k < m; ++k) {
    out.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

double aligned_distance(const Vector& a, const Vector& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

double grid_min_direction(const Matrix& a, double step) {
  double best = std::numeric_limits<double>::infinity();
  for (double theta = 0.0; theta < std::numbers::pi; theta += step) {
    const double c = std::cos(theta), s = std::sin(theta);
    double total = 0.0;
    for (Index i = 0; i < a.rows(); ++i) {
      const double y = a(i, 0) * c + a(i, 1) * s;
      total += std::abs(a(i, 0) - y * c) + std::abs(a(i, 1) - y * s);
    }
    best = std::min(best, total);
  }
  return best;
}

}  // namespace l1pca::testing
