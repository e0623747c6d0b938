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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "l1pca/kernels.hpp"
#include "l1pca/linalg.hpp"
#include "l1pca/types.hpp"

// L1-norm PCA by iteratively reweighted least squares.
//
// Each iteration solves an ordinary L2-PCA on the row-weighted data
// sqrt(w_i) * a_i, scores the loadings by the entrywise L1 reconstruction
// error on the original data, and derives the next weights from that
// residual: rows that fit well get large weight, outlying rows get small
// weight. The exact variant (wpca) re-solves every eigenproblem; the
// approximate variant (awpca) tracks the eigenpairs of the weighted Gram
// matrix with a first-order perturbation update once the weights settle.
namespace l1pca {

enum class Mode { exact, approximate };

// How awpca decides that the weights moved too far for a perturbation step.
enum class Trigger {
  weights,  // ||w^t - w^{t-1}||_1 > gamma * ||w^t||_1
  delta,    // ||A_t - A_{t-1}||_F^2 > gamma * ||A||_F^2
};

struct IRLSConfig {
  double epsilon = 1e-3;  // stop once ||w^{t+1} - w^t||_1 <= epsilon
  double beta = 0.99;     // damping base; the band at iteration t is 1 +/- beta^t
  double gamma = 0.1;     // awpca re-solve threshold
  int max_iters = 200;
  Mode mode = Mode::exact;
  Trigger trigger = Trigger::weights;
  // When false a degenerate spectrum during an approximate step is an error
  // instead of a silent switch to a full eigensolve.
  bool degenerate_fallback = true;
  // Eigenvalues closer than gap * (1 + max |lambda|) are treated as degenerate.
  double degeneracy_gap = 1e-6;
  // Residual rows with ||e_i|| <= tol * max_i ||a_i|| count as exact fits.
  double residual_zero_tol = 1e-10;

  // Throws ParameterError.
  void validate() const;
};

enum class Termination { converged, max_iters };

std::string to_string(Termination t);
std::string to_string(Mode m);
std::string to_string(Trigger t);

// Weights carried between iterations: `current` is w^t, `previous` w^{t-1}.
struct WeightState {
  int t = 1;
  Vector previous;
  Vector current;
};

struct IRLSResult {
  PrincipalComponents best_loadings;
  double best_objective = 0.0;
  std::vector<double> objective_trace;     // F(X_t), one entry per iteration
  std::vector<double> weight_delta_trace;  // ||w^{t+1} - w^t||_1 after iteration t
  int iterations_run = 0;
  Termination termination = Termination::max_iters;
  int exact_steps = 0;
  int approx_steps = 0;
  double seconds = 0.0;
};

// Everything an observer may want to check about one iteration.
struct IterationEvent {
  int t;
  const Vector& weights;       // w^t
  const Vector& raw_weights;   // u^{t+1}
  const Vector& next_weights;  // w^{t+1}
  double beta_power;           // beta^t
  double objective;            // F(X_t)
  bool exact_step;
};

using IterationObserver = std::function<void(const IterationEvent&)>;

// sum_ij |e_ij| with E = A - A X X^T on the given (unweighted) data.
double l1_objective(const DataMatrix& a, const PrincipalComponents& x);

// Row i of A scaled by sqrt(w_i). Throws ParameterError on a non-positive,
// non-finite or mis-sized weight vector.
DataMatrix weighted_matrix(const DataMatrix& a, const Vector& w);

struct RawWeights {
  Vector u;
  // No row had a nonzero residual; u is all ones.
  bool all_zero = false;
};

// u_i = sum_j |e_ij| / sum_j e_ij^2 for rows with a residual; rows whose
// residual norm is <= zero_norm get the largest of those ratios.
RawWeights raw_weights(const Matrix& residual, double zero_norm = 0.0);
RawWeights raw_weights(const kernels::RowResiduals& rows, double zero_sq_norm);

// Clamps u elementwise into [w (1 - beta^t), w (1 + beta^t)].
Vector damped_weights(const Vector& w, const Vector& u, double beta, int t);

// First-order update of the full eigensystem of a symmetric matrix under a
// symmetric perturbation:
//   lambda_i' = lambda_i + v_i^T D v_i
//   v_i'      = v_i + sum_{j != i} (v_j^T D v_i) / (lambda_i - lambda_j) v_j
// followed by re-sorting, modified Gram-Schmidt and the sign convention.
//
// Only the first `tracked` pairs (all when negative) must be separated from
// every other eigenvalue by more than gap * (1 + max |lambda|); otherwise
// DegenerateSpectrumError is thrown. Coupling terms between two untracked
// pairs inside such a cluster are dropped, since the projector onto the
// cluster, not its basis, is all the tracked pairs depend on.
EigenpairSet eigenpair_update(const EigenpairSet& prev, const Matrix& delta,
                              Index tracked = -1, double gap = 1e-6);

// Exact reweighting loop. The first iterate uses unit weights, so the result
// is never worse than L2-PCA under the L1 objective.
IRLSResult wpca(const DataMatrix& a, Index p, const IRLSConfig& cfg = {},
                const IterationObserver& observer = {});

// Approximate reweighting loop: full eigensolves only when the trigger fires
// (always at t = 1), first-order eigenpair updates otherwise.
IRLSResult awpca(const DataMatrix& a, Index p, const IRLSConfig& cfg = {},
                 const IterationObserver& observer = {});

// Dispatches on cfg.mode.
IRLSResult fit(const DataMatrix& a, Index p, const IRLSConfig& cfg = {},
               const IterationObserver& observer = {});

}  // namespace l1pca
