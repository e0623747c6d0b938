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

// l1pca: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <glob.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "l1pca/bench.hpp"
#include "l1pca/dataio.hpp"
#include "l1pca/errors.hpp"
#include "l1pca/instance_gen.hpp"
#include "l1pca/l1pca.hpp"
#include "l1pca/linalg.hpp"

namespace fs = std::filesystem;
using namespace l1pca;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct IrlsFlags {
  double epsilon = 0.001;
  double beta = 0.99;
  double gamma = 0.1;
  int max_iters = 200;
  std::string trigger = "weights";
  bool no_fallback = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--epsilon", epsilon, "Weight convergence tolerance")
        ->envname("L1PCA_EPSILON")
        ->capture_default_str();
    cmd.add_option("--beta", beta, "Damping base in (0,1)")
        ->envname("L1PCA_BETA")
        ->capture_default_str();
    cmd.add_option("--gamma", gamma, "awpca re-solve threshold")
        ->envname("L1PCA_GAMMA")
        ->capture_default_str();
    cmd.add_option("--max-iters", max_iters, "Iteration cap")
        ->envname("L1PCA_MAX_ITERS")
        ->capture_default_str();
    cmd.add_option("--trigger", trigger, "awpca trigger: weights or delta")
        ->check(CLI::IsMember({"weights", "delta"}))
        ->capture_default_str();
    cmd.add_flag("--no-fallback", no_fallback,
                 "Fail instead of re-solving when the spectrum is degenerate");
  }

  IRLSConfig config() const {
    IRLSConfig cfg;
    cfg.epsilon = epsilon;
    cfg.beta = beta;
    cfg.gamma = gamma;
    cfg.max_iters = max_iters;
    cfg.trigger = trigger == "delta" ? Trigger::delta : Trigger::weights;
    cfg.degenerate_fallback = !no_fallback;
    cfg.validate();
    return cfg;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<fs::path> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  return out;
}

std::string irls_line(const IRLSConfig& cfg) {
  std::ostringstream os;
  os << "epsilon=" << dataio::format_double(cfg.epsilon)
     << " beta=" << dataio::format_double(cfg.beta) << " gamma=" << dataio::format_double(cfg.gamma)
     << " max_iters=" << cfg.max_iters << " trigger=" << to_string(cfg.trigger);
  return os.str();
}

std::string config_line(const std::string& algo, Index p, const IRLSConfig& cfg) {
  return "algo=" + algo + " p=" + std::to_string(p) + " " + irls_line(cfg);
}

struct FitCommand {
  std::string input;
  Index p = 0;
  std::string algo = "wpca";
  std::string out;
  bool no_standardize = false;
  IrlsFlags irls;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("fit", "Fit L1-PCA loadings to a matrix file");
    cmd->add_option("--input", input, "Matrix CSV")->required();
    cmd->add_option("--p", p, "Number of components")->required();
    cmd->add_option("--algo", algo, "wpca, awpca or l2pca")
        ->check(CLI::IsMember({"wpca", "awpca", "l2pca"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "Write loadings (m x p CSV) here")->capture_default_str();
    cmd->add_flag("--no-standardize", no_standardize, "Use the data as given");
    irls.add_to(*cmd);
    cmd->callback([this] { status = run(); });
  }

  int run() {
    const IRLSConfig cfg = irls.config();
    DataMatrix raw = dataio::read_matrix(input);
    std::vector<Index> kept(static_cast<std::size_t>(raw.cols()));
    for (Index j = 0; j < raw.cols(); ++j) kept[static_cast<std::size_t>(j)] = j;
    DataMatrix data = raw;
    if (!no_standardize) {
      auto s = dataio::standardize(raw);
      data = std::move(s.data);
      kept = std::move(s.kept_columns);
    }

    std::optional<PrincipalComponents> loadings;
    std::ostringstream summary;
    if (algo == "l2pca") {
      loadings = linalg::l2pca(data, p);
      summary << "objective=" << dataio::format_double(l1_objective(data, *loadings))
              << " iterations=1 termination=closed_form exact_steps=1 approx_steps=0";
    } else {
      IRLSConfig c = cfg;
      c.mode = algo == "wpca" ? Mode::exact : Mode::approximate;
      const IRLSResult res = fit(data, p, c);
      loadings = res.best_loadings;
      summary << "objective=" << dataio::format_double(res.best_objective)
              << " iterations=" << res.iterations_run
              << " termination=" << to_string(res.termination)
              << " exact_steps=" << res.exact_steps << " approx_steps=" << res.approx_steps;
    }

    if (!out.empty()) {
      std::vector<std::string> names;
      for (Index k = 0; k < p; ++k) names.push_back("pc" + std::to_string(k + 1));
      std::string kept_line = "kept_columns=";
      for (std::size_t k = 0; k < kept.size(); ++k)
        kept_line += (k ? "," : "") + std::to_string(kept[k]);
      dataio::write_matrix(out, loadings->loadings(), {config_line(algo, p, cfg), kept_line}, names);
    }
    std::cout << summary.str() << '\n';
    return kOk;
  }

  int status = kOk;
};

struct GenCommand {
  instance_gen::SyntheticSpec spec;
  int count = 1;
  std::string out_dir = ".";

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("gen", "Generate synthetic low-rank instances with outliers");
    cmd->add_option("--m", spec.m, "Attributes")->capture_default_str();
    cmd->add_option("--n", spec.n, "Observations")->capture_default_str();
    cmd->add_option("--q", spec.q, "Target rank")->capture_default_str();
    cmd->add_option("--r", spec.r, "Outlier row probability")->capture_default_str();
    cmd->add_option("--seed", spec.seed, "Seed of the first instance")->capture_default_str();
    cmd->add_option("--count", count, "Instances to write, seeds increment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    cmd->callback([this] { status = run(); });
  }

  int run() {
    fs::create_directories(out_dir);
    for (int k = 0; k < count; ++k) {
      instance_gen::SyntheticSpec s = spec;
      s.seed = spec.seed + static_cast<std::uint64_t>(k);
      const DataMatrix a = instance_gen::generate(s);
      const fs::path path =
          fs::path(out_dir) / ("syn_m" + std::to_string(s.m) + "_n" + std::to_string(s.n) + "_r" +
                               dataio::format_double(s.r) + "_s" + std::to_string(s.seed) + ".csv");
      dataio::write_matrix(path, a);
      std::cout << path.string() << '\n';
    }
    return kOk;
  }

  int status = kOk;
};

struct BenchCommand {
  std::string instances;
  std::string grid;
  std::string algos = "wpca,awpca";
  std::string p_list = "8,9,10,11,12";
  int reps = 1;
  int workers = 1;
  std::string external;
  std::string out_dir = "bench_out";
  std::string group_by = "m,n,p";
  bool no_timing = false;
  bool no_standardize = false;
  IrlsFlags irls;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("bench", "Run an algorithm x instance x p sweep");
    auto* inst = cmd->add_option("--instances", instances, "Glob of matrix files");
    auto* grd = cmd->add_option("--grid", grid,
                                "Synthetic grid, e.g. m=20,50;n=100,300;r=0,0.1;q=10;count=5;seed=1");
    inst->excludes(grd);
    cmd->add_option("--algos", algos, "Comma-separated: wpca, awpca, l2pca")->capture_default_str();
    cmd->add_option("--p-list", p_list, "Comma-separated component counts")->capture_default_str();
    cmd->add_option("--reps", reps, "Repetitions per cell")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--workers", workers, "Concurrent cells")
        ->envname("L1PCA_WORKERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--external-results", external,
                    "CSV with instance_id,p,algorithm,objective,time to merge in");
    cmd->add_option("--out-dir", out_dir, "Where runs.csv and summary.csv go")->capture_default_str();
    cmd->add_option("--group-by", group_by, "Summary keys from instance,m,n,r,p or 'none'")
        ->capture_default_str();
    cmd->add_flag("--no-timing", no_timing, "Write NA for times (byte-reproducible reports)");
    cmd->add_flag("--no-standardize", no_standardize, "Use the data as given");
    irls.add_to(*cmd);
    cmd->callback([this] { status = run(); });
  }

  int run() {
    std::vector<bench::BenchInstance> insts;
    if (!grid.empty()) {
      insts = bench::synthetic_grid(bench::parse_grid(grid));
    } else if (!instances.empty()) {
      const auto paths = expand_glob(instances);
      if (paths.empty()) throw ParameterError("no files match '" + instances + "'");
      for (const auto& path : paths) insts.push_back(bench::load_instance(path));
    } else {
      throw ParameterError("bench needs --instances or --grid");
    }

    bench::SweepOptions opts;
    opts.algorithms.clear();
    for (const auto& a : split_list(algos)) opts.algorithms.push_back(bench::parse_algorithm(a));
    opts.p_values.clear();
    for (const auto& p : split_list(p_list)) {
      try {
        opts.p_values.push_back(std::stoll(p));
      } catch (const std::exception&) {
        throw ParameterError("bad p value '" + p + "'");
      }
    }
    opts.cfg = irls.config();
    opts.repetitions = reps;
    opts.workers = workers;
    opts.standardize = !no_standardize;

    auto records = bench::run_sweep(insts, opts);
    if (!external.empty()) {
      auto ext = bench::read_external_results(external, insts);
      records.insert(records.end(), ext.begin(), ext.end());
    }

    bench::ReportOptions report;
    if (group_by != "none") report.group_by = split_list(group_by);
    else report.group_by.clear();
    report.timing = !no_timing;
    report.metadata.push_back("l1pca bench algorithms=" + algos + " p=" + p_list +
                              " reps=" + std::to_string(reps) + " " + irls_line(opts.cfg));
    bench::emit_report(records, out_dir, report);

    std::size_t failed = 0;
    std::size_t skipped = 0;
    for (const auto& r : records) {
      failed += r.termination == "failed";
      skipped += r.termination == "skipped";
    }
    std::cout << "records=" << records.size() << " failed=" << failed << " skipped=" << skipped
              << " out=" << out_dir << '\n';
    return kOk;
  }

  int status = kOk;
};

struct StandardizeCommand {
  std::string input;
  std::string out;
  bool labeled = false;
  std::string label_col;
  Index top_k = 2;
  std::string out_dir = ".";

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "standardize", "Standardize a matrix, or split a labeled file into standardized groups");
    cmd->add_option("--input", input, "Matrix or labeled CSV")->required();
    cmd->add_option("--out", out, "Output file for a plain matrix (stdout if empty)")
        ->capture_default_str();
    cmd->add_flag("--labeled", labeled, "Input has a label column");
    cmd->add_option("--label-col", label_col, "Label column name or 0-based index (default: last)");
    cmd->add_option("--top-k", top_k, "Largest label groups to keep")->capture_default_str();
    cmd->add_option("--out-dir", out_dir, "Output directory for labeled groups")->capture_default_str();
    cmd->callback([this] { status = run(); });
  }

  int run() {
    if (!labeled) {
      const auto s = dataio::standardize(dataio::read_matrix(input));
      std::vector<std::string> meta = s.data.metadata;
      std::string kept = "kept_columns=";
      for (std::size_t k = 0; k < s.kept_columns.size(); ++k)
        kept += (k ? "," : "") + std::to_string(s.kept_columns[k]);
      meta.push_back(kept);
      if (out.empty())
        dataio::write_matrix(std::cout, Matrix(s.data.values()), meta, s.data.column_names);
      else
        dataio::write_matrix(out, Matrix(s.data.values()), meta, s.data.column_names);
      return kOk;
    }

    const auto table = dataio::read_labeled(
        input, label_col.empty() ? std::nullopt : std::optional<std::string>(label_col));
    const auto groups = dataio::partition_by_label(table, top_k);
    fs::create_directories(out_dir);
    const std::string stem = fs::path(input).stem().string();
    for (const auto& g : groups) {
      if (!g.standardized) {
        std::cerr << "skipping label '" << g.label << "': cannot standardize " << g.rows.size()
                  << " row(s)\n";
        continue;
      }
      const fs::path path = fs::path(out_dir) / (stem + "_" + g.label + ".csv");
      dataio::write_matrix(path, Matrix(g.standardized->data.values()),
                           {"label=" + g.label + " rows=" + std::to_string(g.rows.size())},
                           g.standardized->data.column_names);
      std::cout << path.string() << " " << g.standardized->data.cols() << "x"
                << g.standardized->data.rows() << '\n';
    }
    return kOk;
  }

  int status = kOk;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L1-norm PCA by iteratively reweighted least squares"};
  app.require_subcommand(1);
  FitCommand fit_cmd;
  GenCommand gen_cmd;
  BenchCommand bench_cmd;
  StandardizeCommand std_cmd;
  fit_cmd.add_to(app);
  gen_cmd.add_to(app);
  bench_cmd.add_to(app);
  std_cmd.add_to(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  }
  for (int s : {fit_cmd.status, gen_cmd.status, bench_cmd.status, std_cmd.status})
    if (s != kOk) return s;
  return kOk;
}
