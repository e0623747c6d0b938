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

#include "l1pca/instance_gen.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "l1pca/errors.hpp"
#include "l1pca/linalg.hpp"

namespace l1pca::instance_gen {

void SyntheticSpec::validate() const {
  if (m < 1 || n < 1) throw ParameterError("instance needs m >= 1 and n >= 1");
  if (q < 1 || q > std::min(m, n)) throw ParameterError("target rank q must lie in [1, min(m, n)]");
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("outlier fraction r must lie in [0, 1]");
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal(double stddev) {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Instance generate_instance(const SyntheticSpec& spec) {
  spec.validate();
  const Index n = spec.n;
  const Index m = spec.m;
  const Index q = spec.q;
  Rng rng(spec.seed);

  Matrix p(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) p(i, j) = rng.uniform(-100.0, 100.0);

  Matrix h(n, q);
  std::vector<bool> outlier(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    if (rng.uniform() < spec.r) {
      outlier[static_cast<std::size_t>(i)] = true;
      for (Index j = 0; j < q; ++j) h(i, j) = rng.normal(rng.uniform() < 0.1 ? 30.0 : 1.0);
    } else {
      for (Index j = 0; j < q; ++j) h(i, j) = rng.normal(1.0);
    }
  }

  Eigen::JacobiSVD<Matrix> svd(p, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD of the random base matrix failed");
  Matrix u = svd.matrixU().leftCols(q);
  Matrix v = svd.matrixV().leftCols(q);
  Matrix v_signed = v;
  linalg::apply_sign_convention(v_signed);
  for (Index k = 0; k < q; ++k)
    if (v_signed.col(k).dot(v.col(k)) < 0.0) u.col(k) = -u.col(k);

  Matrix a = (u + h) * svd.singularValues().head(q).asDiagonal() * v_signed.transpose();
  a.rowwise() -= a.colwise().mean();

  Instance out{DataMatrix(a), std::move(outlier)};
  out.data.metadata.push_back(metadata_line(spec));
  return out;
}

DataMatrix generate(const SyntheticSpec& spec) { return generate_instance(spec).data; }

std::string metadata_line(const SyntheticSpec& spec) {
  char rbuf[32];
  auto [end, ec] = std::to_chars(rbuf, rbuf + sizeof rbuf, spec.r);
  std::ostringstream os;
  os << "l1pca-instance m=" << spec.m << " n=" << spec.n << " q=" << spec.q
     << " r=" << std::string(rbuf, end) << " seed=" << spec.seed << " generator=" << kGeneratorName;
  return os.str();
}

std::optional<SyntheticSpec> parse_metadata(const std::vector<std::string>& lines) {
  for (const auto& line : lines) {
    std::istringstream is(line);
    std::string tag;
    if (!(is >> tag) || tag != "l1pca-instance") continue;
    SyntheticSpec spec;
    std::string kv;
    int found = 0;
    bool same_generator = false;
    while (is >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      try {
        if (key == "m") spec.m = std::stoll(val), ++found;
        else if (key == "n") spec.n = std::stoll(val), ++found;
        else if (key == "q") spec.q = std::stoll(val), ++found;
        else if (key == "r") spec.r = std::stod(val), ++found;
        else if (key == "seed") spec.seed = std::stoull(val), ++found;
        else if (key == "generator") same_generator = val == kGeneratorName;
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    if (found == 5 && same_generator) return spec;
  }
  return std::nullopt;
}

}  // namespace l1pca::instance_gen
