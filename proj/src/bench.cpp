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

#include "l1pca/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "l1pca/dataio.hpp"
#include "l1pca/errors.hpp"
#include "l1pca/linalg.hpp"

namespace l1pca::bench {
namespace {

constexpr double kZeroObjective = 1e-12;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    out.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("bad number '" + s + "' for " + what);
  }
}

long long to_integer(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v)) throw ParameterError("expected an integer for " + what + ", got " + s);
  return static_cast<long long>(v);
}

std::string fmt(double v) { return dataio::format_double(v); }

std::string fmt_optional(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Algorithms in report order: ours first, then external names sorted.
std::vector<std::string> algorithm_order(const std::vector<RunRecord>& records) {
  const std::vector<std::string> builtin{"wpca", "awpca", "l2pca"};
  std::set<std::string> seen;
  for (const auto& r : records) seen.insert(r.algorithm);
  std::vector<std::string> out;
  for (const auto& b : builtin)
    if (seen.erase(b)) out.push_back(b);
  out.insert(out.end(), seen.begin(), seen.end());
  return out;
}

struct CellKey {
  std::string instance;
  Index p;
  auto operator<=>(const CellKey&) const = default;
};

// Aggregated view of one (instance, p) cell for one algorithm.
struct CellEntry {
  double objective = 0.0;
  double time_min = 0.0;
  double time_mean = 0.0;
  double gap = 0.0;
};

struct Cell {
  const RunRecord* sample = nullptr;
  std::map<std::string, CellEntry> entries;
};

std::map<CellKey, Cell> build_cells(const std::vector<RunRecord>& records) {
  std::map<CellKey, std::map<std::string, std::vector<const RunRecord*>>> grouped;
  for (const auto& r : records)
    if (r.ok()) grouped[{r.instance_id, r.p}][r.algorithm].push_back(&r);

  std::map<CellKey, Cell> cells;
  for (const auto& [key, by_algo] : grouped) {
    Cell cell;
    std::map<std::string, double> objectives;
    for (const auto& [algo, runs] : by_algo) {
      std::vector<double> objs;
      std::vector<double> times;
      for (const auto* r : runs) {
        objs.push_back(r->objective);
        times.push_back(r->wall_time_seconds);
        if (!cell.sample) cell.sample = r;
      }
      CellEntry e;
      e.objective = mean(objs);
      e.time_min = *std::min_element(times.begin(), times.end());
      e.time_mean = mean(times);
      cell.entries[algo] = e;
      objectives[algo] = e.objective;
    }
    for (const auto& [algo, gap] : gap_metric(objectives)) cell.entries[algo].gap = gap;
    cells[key] = std::move(cell);
  }
  return cells;
}

struct GroupKey {
  std::vector<double> numeric;
  std::vector<std::string> text;
  auto operator<=>(const GroupKey&) const = default;
};

GroupKey group_key(const RunRecord& r, const std::vector<std::string>& group_by) {
  GroupKey key;
  for (const auto& g : group_by) {
    if (g == "instance") {
      key.numeric.push_back(0.0);
      key.text.push_back(r.instance_id);
    } else if (g == "m") {
      key.numeric.push_back(static_cast<double>(r.m));
      key.text.push_back(std::to_string(r.m));
    } else if (g == "n") {
      key.numeric.push_back(static_cast<double>(r.n));
      key.text.push_back(std::to_string(r.n));
    } else if (g == "r") {
      key.numeric.push_back(r.r ? *r.r : std::numeric_limits<double>::infinity());
      key.text.push_back(fmt_optional(r.r));
    } else if (g == "p") {
      key.numeric.push_back(static_cast<double>(r.p));
      key.text.push_back(std::to_string(r.p));
    } else {
      throw ParameterError("unknown group-by key '" + g + "'");
    }
  }
  return key;
}

void write_metadata(std::ostream& os, const ReportOptions& options) {
  for (const auto& m : options.metadata) os << "# " << m << '\n';
}

std::string runs_csv(const std::vector<RunRecord>& records,
                     const std::map<CellKey, Cell>& cells, const ReportOptions& options) {
  std::ostringstream os;
  write_metadata(os, options);
  os << "instance_id,m,n,r,p,algorithm,repetition,objective,gap,wall_time_seconds,iterations,"
        "termination,exact_steps,approx_steps\n";
  for (const auto& r : records) {
    std::string gap = "NA";
    if (r.ok()) gap = fmt(cells.at({r.instance_id, r.p}).entries.at(r.algorithm).gap);
    os << r.instance_id << ',' << r.m << ',' << r.n << ',' << fmt_optional(r.r) << ',' << r.p
       << ',' << r.algorithm << ',' << r.repetition << ','
       << (r.ok() ? fmt(r.objective) : "NA") << ',' << gap << ','
       << (options.timing && r.ok() ? fmt(r.wall_time_seconds) : "NA") << ',' << r.iterations
       << ',' << r.termination << ',' << r.exact_steps << ',' << r.approx_steps << '\n';
  }
  return os.str();
}

std::string long_summary(const std::vector<RunRecord>& records,
                         const std::map<CellKey, Cell>& cells, const ReportOptions& options) {
  std::ostringstream os;
  write_metadata(os, options);
  os << "instance_id,p,algorithm,repetition,gap,time_seconds\n";
  for (const auto& r : records) {
    std::string gap = "NA";
    if (r.ok()) gap = fmt(cells.at({r.instance_id, r.p}).entries.at(r.algorithm).gap);
    os << r.instance_id << ',' << r.p << ',' << r.algorithm << ',' << r.repetition << ',' << gap
       << ',' << (options.timing && r.ok() ? fmt(r.wall_time_seconds) : "NA") << '\n';
  }
  return os.str();
}

std::string grouped_summary(const std::vector<RunRecord>& records,
                            const std::map<CellKey, Cell>& cells, const ReportOptions& options) {
  const auto algos = algorithm_order(records);
  const bool pair = std::find(algos.begin(), algos.end(), "wpca") != algos.end() &&
                    std::find(algos.begin(), algos.end(), "awpca") != algos.end();

  struct Accum {
    std::vector<std::string> labels;
    int cells = 0;
    std::map<std::string, std::vector<double>> gap, tmin, tmean;
    std::vector<double> diff;
  };
  std::map<GroupKey, Accum> groups;
  for (const auto& [key, cell] : cells) {
    const GroupKey gk = group_key(*cell.sample, options.group_by);
    Accum& acc = groups[gk];
    acc.labels = gk.text;
    ++acc.cells;
    for (const auto& [algo, e] : cell.entries) {
      acc.gap[algo].push_back(e.gap);
      acc.tmin[algo].push_back(e.time_min);
      acc.tmean[algo].push_back(e.time_mean);
    }
    if (pair && cell.entries.count("wpca") && cell.entries.count("awpca"))
      acc.diff.push_back(cell.entries.at("wpca").gap - cell.entries.at("awpca").gap);
  }

  std::ostringstream os;
  write_metadata(os, options);
  for (const auto& g : options.group_by) os << g << ',';
  os << "cells";
  for (const auto& a : algos) os << ",gap_" << a;
  for (const auto& a : algos) os << ",time_min_" << a << ",time_mean_" << a;
  if (pair) os << ",diff,ratio";
  os << '\n';

  auto avg = [](const std::map<std::string, std::vector<double>>& m, const std::string& a) {
    const auto it = m.find(a);
    return it == m.end() ? std::optional<double>{} : std::optional<double>{mean(it->second)};
  };
  for (const auto& [key, acc] : groups) {
    for (const auto& l : acc.labels) os << l << ',';
    os << acc.cells;
    for (const auto& a : algos) os << ',' << fmt_optional(avg(acc.gap, a));
    for (const auto& a : algos) {
      if (options.timing)
        os << ',' << fmt_optional(avg(acc.tmin, a)) << ',' << fmt_optional(avg(acc.tmean, a));
      else
        os << ",NA,NA";
    }
    if (pair) {
      os << ',' << (acc.diff.empty() ? "NA" : fmt(mean(acc.diff)));
      const auto tw = avg(acc.tmin, "wpca");
      const auto ta = avg(acc.tmin, "awpca");
      if (options.timing && tw && ta && *tw > 0.0)
        os << ',' << fmt(*ta / *tw);
      else
        os << ",NA";
    }
    os << '\n';
  }
  return os.str();
}

RunRecord run_cell(const BenchInstance& inst, const DataMatrix& data, Algorithm algo, Index p,
                   int rep, const IRLSConfig& base) {
  RunRecord rec;
  rec.instance_id = inst.id;
  rec.m = inst.data.cols();
  rec.n = inst.data.rows();
  if (inst.spec) rec.r = inst.spec->r;
  rec.algorithm = to_string(algo);
  rec.p = p;
  rec.repetition = rep;
  if (p > data.cols()) {
    rec.termination = "skipped";
    return rec;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    if (algo == Algorithm::l2pca) {
      const auto x = linalg::l2pca(data, p);
      rec.objective = l1_objective(data, x);
      rec.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rec.iterations = 1;
      rec.exact_steps = 1;
      rec.termination = "closed_form";
      return rec;
    }
    IRLSConfig cfg = base;
    cfg.mode = algo == Algorithm::wpca ? Mode::exact : Mode::approximate;
    const IRLSResult res = fit(data, p, cfg);
    rec.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.objective = res.best_objective;
    rec.iterations = res.iterations_run;
    rec.termination = to_string(res.termination);
    rec.exact_steps = res.exact_steps;
    rec.approx_steps = res.approx_steps;
  } catch (const Error&) {
    rec.termination = "failed";
  }
  return rec;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::wpca: return "wpca";
    case Algorithm::awpca: return "awpca";
    case Algorithm::l2pca: return "l2pca";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "wpca") return Algorithm::wpca;
  if (name == "awpca") return Algorithm::awpca;
  if (name == "l2pca") return Algorithm::l2pca;
  throw ParameterError("unknown algorithm '" + name + "' (expected wpca, awpca or l2pca)");
}

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  for (const auto& part : split(text, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParameterError("grid entry '" + part + "' is not key=value");
    const std::string key = part.substr(0, eq);
    const auto values = split(part.substr(eq + 1), ',');
    if (values.empty()) throw ParameterError("grid entry '" + key + "' has no values");
    if (key == "m" || key == "n") {
      auto& dst = key == "m" ? grid.m : grid.n;
      dst.clear();
      for (const auto& v : values) dst.push_back(to_integer(v, key));
    } else if (key == "r") {
      grid.r.clear();
      for (const auto& v : values) grid.r.push_back(to_double(v, key));
    } else if (key == "q") {
      grid.q = to_integer(values.at(0), key);
    } else if (key == "count") {
      grid.replicates = static_cast<int>(to_integer(values.at(0), key));
    } else if (key == "seed") {
      grid.base_seed = static_cast<std::uint64_t>(to_integer(values.at(0), key));
    } else {
      throw ParameterError("unknown grid key '" + key + "'");
    }
  }
  if (grid.m.empty() || grid.n.empty() || grid.r.empty() || grid.replicates < 1)
    throw ParameterError("grid must have at least one m, n, r and count >= 1");
  return grid;
}

std::vector<instance_gen::SyntheticSpec> grid_specs(const GridSpec& grid) {
  std::vector<instance_gen::SyntheticSpec> specs;
  std::uint64_t seed = grid.base_seed;
  for (Index m : grid.m)
    for (Index n : grid.n)
      for (double r : grid.r)
        for (int k = 0; k < grid.replicates; ++k) {
          instance_gen::SyntheticSpec s{m, n, grid.q, r, seed++};
          s.validate();
          specs.push_back(s);
        }
  return specs;
}

std::string instance_id(const instance_gen::SyntheticSpec& spec, int replicate) {
  return "syn_m" + std::to_string(spec.m) + "_n" + std::to_string(spec.n) + "_r" + fmt(spec.r) +
         "_k" + std::to_string(replicate);
}

std::vector<BenchInstance> synthetic_grid(const GridSpec& grid) {
  std::vector<BenchInstance> out;
  const auto specs = grid_specs(grid);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const int replicate = static_cast<int>(i % static_cast<std::size_t>(grid.replicates));
    out.push_back({instance_id(specs[i], replicate), instance_gen::generate(specs[i]), specs[i]});
  }
  return out;
}

BenchInstance load_instance(const std::filesystem::path& path) {
  DataMatrix data = dataio::read_matrix(path);
  auto spec = instance_gen::parse_metadata(data.metadata);
  return {path.stem().string(), std::move(data), spec};
}

std::vector<RunRecord> run_sweep(const std::vector<BenchInstance>& instances,
                                 const SweepOptions& options) {
  if (instances.empty() || options.algorithms.empty() || options.p_values.empty())
    throw ParameterError("sweep needs at least one instance, algorithm and p value");
  if (options.repetitions < 1) throw ParameterError("repetitions must be >= 1");
  if (options.workers < 1) throw ParameterError("workers must be >= 1");
  options.cfg.validate();

  // Preprocessing is not part of any timed cell.
  std::vector<DataMatrix> prepared;
  for (const auto& inst : instances)
    prepared.push_back(options.standardize ? dataio::standardize(inst.data).data : inst.data);

  struct Task {
    std::size_t instance;
    Algorithm algo;
    Index p;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (Algorithm a : options.algorithms)
      for (Index p : options.p_values)
        for (int rep = 0; rep < options.repetitions; ++rep) tasks.push_back({i, a, p, rep});

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&](bool single_thread_kernels) {
    if (single_thread_kernels) omp_set_num_threads(1);
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      const Task& t = tasks[k];
      records[k] = run_cell(instances[t.instance], prepared[t.instance], t.algo, t.p, t.rep,
                            options.cfg);
    }
  };
  if (options.workers == 1) {
    worker(false);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < options.workers; ++w) pool.emplace_back(worker, true);
  }
  return records;
}

std::map<std::string, double> gap_metric(const std::map<std::string, double>& objectives) {
  if (objectives.empty()) throw ParameterError("gap metric needs at least one objective");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [algo, f] : objectives) {
    if (!(f >= 0.0) || !std::isfinite(f))
      throw ParameterError("objective for '" + algo + "' is not a finite non-negative number");
    best = std::min(best, f);
  }
  std::map<std::string, double> gaps;
  for (const auto& [algo, f] : objectives) {
    if (best <= kZeroObjective)
      gaps[algo] = f <= kZeroObjective ? 0.0 : 1.0;
    else
      gaps[algo] = std::min(f / best - 1.0, 1.0);
  }
  return gaps;
}

std::vector<RunRecord> read_external_results(const std::filesystem::path& path,
                                             const std::vector<BenchInstance>& instances) {
  const dataio::CsvTable table = dataio::read_csv(path);
  const auto c_id = table.column("instance_id");
  const auto c_p = table.column("p");
  const auto c_algo = table.column("algorithm");
  const auto c_obj = table.column("objective");
  const auto c_time = table.column("time");
  std::vector<RunRecord> out;
  for (const auto& row : table.rows) {
    RunRecord rec;
    rec.instance_id = row[c_id];
    rec.p = to_integer(row[c_p], "p");
    rec.algorithm = row[c_algo];
    rec.objective = to_double(row[c_obj], "objective");
    rec.wall_time_seconds = to_double(row[c_time], "time");
    rec.termination = "external";
    for (const auto& inst : instances) {
      if (inst.id != rec.instance_id) continue;
      rec.m = inst.data.cols();
      rec.n = inst.data.rows();
      if (inst.spec) rec.r = inst.spec->r;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

Report build_report(const std::vector<RunRecord>& records, const ReportOptions& options) {
  if (records.empty()) throw ParameterError("report needs at least one record");
  const auto cells = build_cells(records);
  Report report;
  report.runs_csv = runs_csv(records, cells, options);
  report.summary_csv = options.group_by.empty() ? long_summary(records, cells, options)
                                                : grouped_summary(records, cells, options);
  return report;
}

void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& out_dir,
                 const ReportOptions& options) {
  const Report report = build_report(records, options);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  for (const auto& [name, body] : {std::pair{"runs.csv", &report.runs_csv},
                                   std::pair{"summary.csv", &report.summary_csv}}) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw IoError("cannot write '" + (out_dir / name).string() + "'");
    out << *body;
    if (!out) throw IoError("write to '" + (out_dir / name).string() + "' failed");
  }
}

}  // namespace l1pca::bench
