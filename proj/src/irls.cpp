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

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "l1pca/errors.hpp"
#include "l1pca/kernels.hpp"
#include "l1pca/l1pca.hpp"
#include "l1pca/linalg.hpp"

namespace l1pca {

void IRLSConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ParameterError("epsilon must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be > 0");
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!(degeneracy_gap >= 0.0)) throw ParameterError("degeneracy_gap must be >= 0");
  if (!(residual_zero_tol >= 0.0)) throw ParameterError("residual_zero_tol must be >= 0");
}

std::string to_string(Termination t) {
  return t == Termination::converged ? "converged" : "max_iters";
}

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "approximate"; }

std::string to_string(Trigger t) { return t == Trigger::weights ? "weights" : "delta"; }

namespace {

// Produces X_t from the current weights; wpca and awpca differ only here.
class ComponentSolver {
 public:
  virtual ~ComponentSolver() = default;
  // Returns the loadings for w^t and whether a full eigensolve was used.
  virtual std::pair<PrincipalComponents, bool> solve(const WeightState& state) = 0;
};

class ExactSolver final : public ComponentSolver {
 public:
  ExactSolver(const DataMatrix& a, Index p) : a_(a), p_(p) {}

  std::pair<PrincipalComponents, bool> solve(const WeightState& state) override {
    return {linalg::l2pca(weighted_matrix(a_, state.current), p_), true};
  }

 private:
  const DataMatrix& a_;
  Index p_;
};

class ApproximateSolver final : public ComponentSolver {
 public:
  ApproximateSolver(const DataMatrix& a, Index p, const IRLSConfig& cfg)
      : a_(a), p_(p), cfg_(cfg), row_sq_norms_(a.values().rowwise().squaredNorm()) {
    total_sq_norm_ = kernels::ordered_sum(row_sq_norms_);
  }

  std::pair<PrincipalComponents, bool> solve(const WeightState& state) override {
    bool exact = !pairs_ || triggered(state);
    if (!exact) {
      const Vector dw = state.current - state.previous;
      try {
        pairs_ = eigenpair_update(*pairs_, kernels::parallel::weighted_gram(a_.values(), dw), p_,
                                  cfg_.degeneracy_gap);
      } catch (const DegenerateSpectrumError&) {
        if (!cfg_.degenerate_fallback) throw;
        exact = true;
      }
    }
    if (exact) pairs_ = linalg::gram_eigenpairs(weighted_matrix(a_, state.current));
    return {linalg::leading_components(*pairs_, p_), exact};
  }

 private:
  bool triggered(const WeightState& state) const {
    if (cfg_.trigger == Trigger::weights) {
      double change = 0.0, total = 0.0;
      for (Index i = 0; i < state.current.size(); ++i) {
        change += std::abs(state.current[i] - state.previous[i]);
        total += std::abs(state.current[i]);
      }
      return change > cfg_.gamma * total;
    }
    // ||A_t - A_{t-1}||_F^2 = sum_i (sqrt(w_i^t) - sqrt(w_i^{t-1}))^2 ||a_i||^2
    double change = 0.0;
    for (Index i = 0; i < row_sq_norms_.size(); ++i) {
      const double d = std::sqrt(state.current[i]) - std::sqrt(state.previous[i]);
      change += d * d * row_sq_norms_[i];
    }
    return change > cfg_.gamma * total_sq_norm_;
  }

  const DataMatrix& a_;
  Index p_;
  const IRLSConfig& cfg_;
  Vector row_sq_norms_;
  double total_sq_norm_ = 0.0;
  std::optional<EigenpairSet> pairs_;
};

IRLSResult run(const DataMatrix& a, const IRLSConfig& cfg, ComponentSolver& solver,
               const IterationObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  const Index n = a.rows();
  const double max_row_norm = std::sqrt(a.values().rowwise().squaredNorm().maxCoeff());
  const double zero_norm = cfg.residual_zero_tol * max_row_norm;

  WeightState state{1, Vector::Constant(n, 2.0), Vector::Ones(n)};
  std::optional<PrincipalComponents> best;
  double best_objective = std::numeric_limits<double>::infinity();
  std::vector<double> objectives;
  std::vector<double> deltas;
  int exact_steps = 0;
  int approx_steps = 0;

  // ||w^1 - w^0||_1 = n, so the loop body runs at least once for any sane
  // epsilon; t == 1 is forced anyway so X^best always exists.
  double delta = (state.current - state.previous).lpNorm<1>();
  while ((state.t == 1 || delta > cfg.epsilon) && state.t <= cfg.max_iters) {
    auto [x, exact] = solver.solve(state);
    exact ? ++exact_steps : ++approx_steps;

    const kernels::RowResiduals rows = kernels::parallel::row_residuals(a.values(), x.loadings());
    const double objective = kernels::ordered_sum(rows.abs_sum);
    objectives.push_back(objective);
    if (objective < best_objective) {
      best_objective = objective;
      best = std::move(x);
    }

    const RawWeights raw = raw_weights(rows, zero_norm * zero_norm);
    const double beta_power = std::pow(cfg.beta, state.t);
    if (raw.all_zero) {
      // Every row is reproduced exactly; nothing left to reweight.
      delta = 0.0;
      deltas.push_back(delta);
      if (observer)
        observer({state.t, state.current, raw.u, state.current, beta_power, objective, exact});
      break;
    }
    Vector next = damped_weights(state.current, raw.u, cfg.beta, state.t);
    delta = (next - state.current).lpNorm<1>();
    deltas.push_back(delta);
    if (observer) observer({state.t, state.current, raw.u, next, beta_power, objective, exact});

    state.previous = std::move(state.current);
    state.current = std::move(next);
    ++state.t;
  }

  const int iterations = static_cast<int>(objectives.size());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  IRLSResult result{std::move(*best),
                    best_objective,
                    std::move(objectives),
                    std::move(deltas),
                    iterations,
                    delta <= cfg.epsilon ? Termination::converged : Termination::max_iters,
                    exact_steps,
                    approx_steps,
                    seconds};
  return result;
}

void check_inputs(const DataMatrix& a, Index p, const IRLSConfig& cfg) {
  cfg.validate();
  if (p < 1 || p > a.cols())
    throw ParameterError("number of components p=" + std::to_string(p) + " must be in [1, " +
                         std::to_string(a.cols()) + "]");
}

}  // namespace

IRLSResult wpca(const DataMatrix& a, Index p, const IRLSConfig& cfg,
                const IterationObserver& observer) {
  check_inputs(a, p, cfg);
  ExactSolver solver(a, p);
  return run(a, cfg, solver, observer);
}

IRLSResult awpca(const DataMatrix& a, Index p, const IRLSConfig& cfg,
                 const IterationObserver& observer) {
  check_inputs(a, p, cfg);
  ApproximateSolver solver(a, p, cfg);
  return run(a, cfg, solver, observer);
}

IRLSResult fit(const DataMatrix& a, Index p, const IRLSConfig& cfg,
               const IterationObserver& observer) {
  return cfg.mode == Mode::exact ? wpca(a, p, cfg, observer) : awpca(a, p, cfg, observer);
}

}  // namespace l1pca
