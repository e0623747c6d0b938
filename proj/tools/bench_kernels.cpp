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

// Times the serial reference kernels against the OpenMP ones and checks that
// they agree. Usage: bench_kernels [n] [m] [p] [reps]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#include "l1pca/instance_gen.hpp"
#include "l1pca/kernels.hpp"

using namespace l1pca;

namespace {

double time_best(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const std::string& name, double serial, double parallel, double err) {
  std::cout << std::left << std::setw(16) << name << std::right << std::setw(12) << std::scientific
            << std::setprecision(3) << serial << std::setw(12) << parallel << std::setw(10)
            << std::fixed << std::setprecision(2) << serial / parallel << "x" << std::setw(12)
            << std::scientific << err << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const Index n = argc > 1 ? std::atol(argv[1]) : 12332;
  const Index m = argc > 2 ? std::atol(argv[2]) : 10;
  const Index p = argc > 3 ? std::atol(argv[3]) : 5;
  const int reps = argc > 4 ? std::atoi(argv[4]) : 20;

  instance_gen::Rng rng(42);
  RowMatrix a(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) a(i, j) = rng.normal(1.0);
  Vector w(n);
  for (Index i = 0; i < n; ++i) w[i] = 0.5 + rng.uniform();
  Matrix basis(m, p);
  for (Index j = 0; j < m; ++j)
    for (Index k = 0; k < p; ++k) basis(j, k) = rng.normal(1.0);
  const Matrix x = Eigen::HouseholderQR<Matrix>(basis).householderQ() * Matrix::Identity(m, p);

  std::cout << "n=" << n << " m=" << m << " p=" << p << " threads=" << omp_get_max_threads()
            << " reps=" << reps << "\n";
  std::cout << std::left << std::setw(16) << "kernel" << std::right << std::setw(12) << "serial[s]"
            << std::setw(12) << "omp[s]" << std::setw(11) << "speedup" << std::setw(12)
            << "max|diff|" << '\n';

  // Timings are taken before the comparison, which reads their outputs.
  Matrix gs, gp;
  double ts = time_best(reps, [&] { gs = kernels::serial::gram(a); });
  double tp = time_best(reps, [&] { gp = kernels::parallel::gram(a); });
  report("gram", ts, tp, (gs - gp).cwiseAbs().maxCoeff());

  ts = time_best(reps, [&] { gs = kernels::serial::weighted_gram(a, w); });
  tp = time_best(reps, [&] { gp = kernels::parallel::weighted_gram(a, w); });
  report("weighted_gram", ts, tp, (gs - gp).cwiseAbs().maxCoeff());

  RowMatrix ss, sp;
  ts = time_best(reps, [&] { ss = kernels::serial::scale_rows(a, w); });
  tp = time_best(reps, [&] { sp = kernels::parallel::scale_rows(a, w); });
  report("scale_rows", ts, tp, (ss - sp).cwiseAbs().maxCoeff());

  kernels::RowResiduals rs, rp;
  ts = time_best(reps, [&] { rs = kernels::serial::row_residuals(a, x); });
  tp = time_best(reps, [&] { rp = kernels::parallel::row_residuals(a, x); });
  report("row_residuals", ts, tp, (rs.abs_sum - rp.abs_sum).cwiseAbs().maxCoeff());
  return 0;
}
