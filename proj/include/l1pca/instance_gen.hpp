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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "l1pca/types.hpp"

// Synthetic low-rank instances with outlier rows.
//
// Recipe, with every random draw taken from one mt19937_64 stream in this
// order:
//   1. P (n x m), row-major, p_ij ~ U(-100, 100).
//   2. For each row i: u ~ U(0, 1). If u < r the row is an outlier and for
//      each of its q columns a second u' ~ U(0, 1) is drawn, followed by
//      h_ij ~ N(0, 30) when u' < 0.1 and h_ij ~ N(0, 1) otherwise.
//      Ordinary rows draw h_ij ~ N(0, 1) for all q columns.
//   3. P = U S V^T (thin SVD, sign convention on V).
//   4. A = (U[:, :q] + H) S[:q, :q] V[:, :q]^T, then column means removed.
// N(0, s) is parameterised by the standard deviation s.
namespace l1pca::instance_gen {

inline constexpr std::string_view kGeneratorName = "mt19937_64";

struct SyntheticSpec {
  Index m = 20;
  Index n = 100;
  Index q = 10;
  double r = 0.0;
  std::uint64_t seed = 1;

  // Throws ParameterError unless 1 <= q <= min(m, n) and 0 <= r <= 1.
  void validate() const;
};

// Uniform and normal variates built from raw mt19937_64 output so that the
// stream is identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // 53-bit uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Box-Muller, cosine branch only: two uniforms per draw.
  double normal(double stddev);

 private:
  std::mt19937_64 engine_;
};

struct Instance {
  DataMatrix data;
  std::vector<bool> outlier_rows;
};

Instance generate_instance(const SyntheticSpec& spec);
DataMatrix generate(const SyntheticSpec& spec);

// "l1pca-instance m=.. n=.. q=.. r=.. seed=.. generator=mt19937_64"
std::string metadata_line(const SyntheticSpec& spec);
// Finds and parses a line produced by metadata_line. Lines naming another
// generator are ignored, since their seed cannot reproduce the data here.
std::optional<SyntheticSpec> parse_metadata(const std::vector<std::string>& lines);

}  // namespace l1pca::instance_gen
