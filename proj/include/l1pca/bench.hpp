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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "l1pca/instance_gen.hpp"
#include "l1pca/l1pca.hpp"
#include "l1pca/types.hpp"

// Algorithm x instance x p sweeps, the capped gap metric, and CSV reports.
namespace l1pca::bench {

enum class Algorithm { wpca, awpca, l2pca };

std::string to_string(Algorithm a);
// Throws ParameterError on an unknown name.
Algorithm parse_algorithm(const std::string& name);

struct BenchInstance {
  std::string id;
  DataMatrix data;
  std::optional<instance_gen::SyntheticSpec> spec;  // set for generated instances
};

// Cartesian grid of synthetic specs; seeds are base_seed, base_seed + 1, ...
// in (m, n, r, replicate) order.
struct GridSpec {
  std::vector<Index> m{20, 50};
  std::vector<Index> n{100, 300};
  std::vector<double> r{0.0, 0.1, 0.2, 0.3};
  Index q = 10;
  int replicates = 5;
  std::uint64_t base_seed = 1;
};

// "m=20,50;n=100,300;r=0,0.1,0.2,0.3;q=10;count=5;seed=1"; omitted keys keep
// their defaults. Throws ParameterError.
GridSpec parse_grid(const std::string& text);
std::vector<instance_gen::SyntheticSpec> grid_specs(const GridSpec& grid);
std::string instance_id(const instance_gen::SyntheticSpec& spec, int replicate);
std::vector<BenchInstance> synthetic_grid(const GridSpec& grid);

// Loads a matrix file; the id is the file stem and generator metadata, if
// present, is attached.
BenchInstance load_instance(const std::filesystem::path& path);

struct RunRecord {
  std::string instance_id;
  Index m = 0;
  Index n = 0;
  std::optional<double> r;
  std::string algorithm;
  Index p = 0;
  int repetition = 0;
  double objective = 0.0;
  double wall_time_seconds = 0.0;
  int iterations = 0;
  // converged | max_iters | closed_form (l2pca) | skipped (p > m) | failed
  std::string termination;
  int exact_steps = 0;
  int approx_steps = 0;

  bool ok() const { return termination != "skipped" && termination != "failed"; }
};

struct SweepOptions {
  std::vector<Algorithm> algorithms{Algorithm::wpca, Algorithm::awpca};
  std::vector<Index> p_values{8, 9, 10, 11, 12};
  IRLSConfig cfg;
  int repetitions = 1;
  int workers = 1;
  bool standardize = true;
};

// One record per (instance, algorithm, p, repetition), in that nesting order
// whatever the worker count. Wall time covers the fit call only.
std::vector<RunRecord> run_sweep(const std::vector<BenchInstance>& instances,
                                 const SweepOptions& options);

// gap_a = min(F_a / min_b F_b - 1, 1). When the best objective is ~0
// (<= 1e-12) the gap is 0 for other ~0 objectives and 1 otherwise.
// Throws ParameterError on an empty map or a negative/non-finite objective.
std::map<std::string, double> gap_metric(const std::map<std::string, double>& objectives);

// External results CSV with columns instance_id,p,algorithm,objective,time.
// m, n and r are filled in from `instances` when the id matches.
std::vector<RunRecord> read_external_results(const std::filesystem::path& path,
                                             const std::vector<BenchInstance>& instances);

struct ReportOptions {
  // Subset of instance, m, n, r, p; empty means one summary row per record.
  std::vector<std::string> group_by{"m", "n", "p"};
  // Off writes NA in every time column so reports are byte-reproducible.
  bool timing = true;
  std::vector<std::string> metadata;
};

struct Report {
  std::string runs_csv;
  std::string summary_csv;
};

Report build_report(const std::vector<RunRecord>& records, const ReportOptions& options);

// Writes runs.csv and summary.csv into `out_dir` (created if needed).
void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& out_dir,
                 const ReportOptions& options);

}  // namespace l1pca::bench
