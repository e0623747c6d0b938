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

#include "l1pca/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "l1pca/errors.hpp"

namespace l1pca::dataio {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

// One logical line of a CSV file with its 1-based source line number.
struct Line {
  std::size_t number;
  std::string_view text;
};

struct SplitFile {
  std::vector<std::string> metadata;
  std::vector<Line> lines;  // non-blank, non-metadata
};

SplitFile split_lines(std::string_view text) {
  SplitFile out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto raw = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    ++number;
    const auto line = trim(raw);
    if (!line.empty()) {
      if (line.front() == '#') {
        out.metadata.emplace_back(trim(line.substr(1)));
      } else {
        out.lines.push_back({number, line});
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

bool is_header(const std::vector<std::string_view>& cells) {
  return std::none_of(cells.begin(), cells.end(),
                      [](std::string_view c) { return parse_number(c).has_value(); });
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  const auto v = parse_number(cell);
  if (!v) throw ParseError("non-numeric cell '" + std::string(cell) + "'", line, column);
  if (!std::isfinite(*v)) throw ParseError("non-finite value '" + std::string(cell) + "'", line, column);
  return *v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DataMatrix parse_matrix(std::string_view text) {
  SplitFile file = split_lines(text);
  std::vector<std::string> names;
  std::size_t first = 0;
  if (!file.lines.empty()) {
    auto cells = split_cells(file.lines[0].text);
    if (is_header(cells)) {
      for (auto c : cells) names.emplace_back(c);
      first = 1;
    }
  }
  if (first == file.lines.size()) throw DataError("matrix file has no data rows");

  const std::size_t width = split_cells(file.lines[first].text).size();
  if (!names.empty() && names.size() != width)
    throw ParseError("header has " + std::to_string(names.size()) + " names but rows have " +
                         std::to_string(width) + " cells",
                     file.lines[first].number, 1);
  RowMatrix values(static_cast<Index>(file.lines.size() - first), static_cast<Index>(width));
  for (std::size_t r = first; r < file.lines.size(); ++r) {
    const auto cells = split_cells(file.lines[r].text);
    if (cells.size() != width)
      throw ParseError("ragged row: expected " + std::to_string(width) + " cells, found " +
                           std::to_string(cells.size()),
                       file.lines[r].number, std::min(cells.size(), width) + 1);
    for (std::size_t c = 0; c < width; ++c)
      values(static_cast<Index>(r - first), static_cast<Index>(c)) =
          parse_cell(cells[c], file.lines[r].number, c + 1);
  }
  DataMatrix out(std::move(values));
  out.metadata = std::move(file.metadata);
  out.column_names = std::move(names);
  return out;
}

DataMatrix read_matrix(const std::filesystem::path& path) {
  try {
    return parse_matrix(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_matrix(std::ostream& out, const Matrix& values, const std::vector<std::string>& metadata,
                  const std::vector<std::string>& column_names) {
  for (const auto& m : metadata) out << "# " << m << '\n';
  for (std::size_t k = 0; k < column_names.size(); ++k)
    out << (k ? "," : "") << column_names[k] << (k + 1 == column_names.size() ? "\n" : "");
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) out << (j ? "," : "") << format_double(values(i, j));
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& values,
                  const std::vector<std::string>& metadata,
                  const std::vector<std::string>& column_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_matrix(out, values, metadata, column_names);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void write_matrix(const std::filesystem::path& path, const DataMatrix& data) {
  write_matrix(path, Matrix(data.values()), data.metadata, data.column_names);
}

Standardized standardize(const DataMatrix& a, double min_std) {
  const Index n = a.rows();
  if (n < 2) throw ParameterError("standardization needs at least two rows");
  std::vector<Index> kept;
  std::vector<double> means;
  std::vector<double> stds;
  for (Index j = 0; j < a.cols(); ++j) {
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) sum += a.values()(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double d = a.values()(i, j) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd < min_std) continue;
    kept.push_back(j);
    means.push_back(mean);
    stds.push_back(sd);
  }
  if (kept.empty()) throw DataError("every column has zero variance");

  RowMatrix out(n, static_cast<Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (Index i = 0; i < n; ++i)
      out(i, static_cast<Index>(k)) = (a.values()(i, kept[k]) - means[k]) / stds[k];

  Standardized result{DataMatrix(std::move(out)), std::move(kept)};
  result.data.metadata = a.metadata;
  if (!a.column_names.empty())
    for (Index j : result.kept_columns)
      result.data.column_names.push_back(a.column_names[static_cast<std::size_t>(j)]);
  return result;
}

LabeledTable parse_labeled(std::string_view text, const std::optional<std::string>& label_column) {
  SplitFile file = split_lines(text);
  if (file.lines.empty()) throw DataError("labeled file has no rows");

  auto first_cells = split_cells(file.lines[0].text);
  const std::size_t width = first_cells.size();
  if (width < 2) throw ParseError("labeled rows need a label and at least one attribute",
                                  file.lines[0].number, 1);

  std::vector<std::string> header;
  if (is_header(first_cells))
    for (auto c : first_cells) header.emplace_back(c);

  std::size_t label_idx = width - 1;
  if (label_column) {
    const auto it = std::find(header.begin(), header.end(), *label_column);
    if (it != header.end()) {
      label_idx = static_cast<std::size_t>(it - header.begin());
    } else {
      const auto idx = parse_number(*label_column);
      if (!idx || *idx < 0 || *idx >= static_cast<double>(width) || *idx != std::floor(*idx))
        throw ParameterError("label column '" + *label_column + "' not found");
      label_idx = static_cast<std::size_t>(*idx);
    }
  }

  const std::size_t first = header.empty() ? 0 : 1;
  if (first == file.lines.size()) throw DataError("labeled file has no data rows");
  LabeledTable table;
  table.values.resize(static_cast<Index>(file.lines.size() - first), static_cast<Index>(width - 1));
  for (std::size_t r = first; r < file.lines.size(); ++r) {
    const auto cells = split_cells(file.lines[r].text);
    if (cells.size() != width)
      throw ParseError("ragged row: expected " + std::to_string(width) + " cells, found " +
                           std::to_string(cells.size()),
                       file.lines[r].number, std::min(cells.size(), width) + 1);
    Index out_col = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_idx) {
        table.labels.emplace_back(cells[c]);
        continue;
      }
      table.values(static_cast<Index>(r - first), out_col++) =
          parse_cell(cells[c], file.lines[r].number, c + 1);
    }
  }
  for (std::size_t c = 0; c < width; ++c) {
    if (c == label_idx) continue;
    table.attribute_names.push_back(header.empty() ? "attr" + std::to_string(c + 1) : header[c]);
  }
  return table;
}

LabeledTable read_labeled(const std::filesystem::path& path,
                          const std::optional<std::string>& label_column) {
  try {
    return parse_labeled(slurp(path), label_column);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

std::vector<LabelGroup> partition_by_label(const LabeledTable& table, Index top_k) {
  if (top_k < 1) throw ParameterError("top_k must be >= 1");
  if (table.labels.empty()) throw ParameterError("table has no labels");

  std::map<std::string, std::vector<Index>> groups;
  for (std::size_t i = 0; i < table.labels.size(); ++i)
    groups[table.labels[i]].push_back(static_cast<Index>(i));

  std::vector<std::pair<std::string, std::vector<Index>>> ordered(groups.begin(), groups.end());
  // std::map iteration is already lexicographic, so a stable sort on size
  // leaves ties in label order.
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
  if (static_cast<Index>(ordered.size()) > top_k) ordered.resize(static_cast<std::size_t>(top_k));

  std::vector<LabelGroup> out;
  for (auto& [label, rows] : ordered) {
    RowMatrix values(static_cast<Index>(rows.size()), table.values.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) values.row(static_cast<Index>(r)) = table.values.row(rows[r]);
    DataMatrix raw(std::move(values));
    raw.column_names = table.attribute_names;
    std::optional<Standardized> standardized;
    if (raw.rows() >= 2) {
      try {
        standardized = standardize(raw);
      } catch (const DataError&) {
      }
    }
    out.push_back({label, std::move(rows), std::move(raw), std::move(standardized)});
  }
  return out;
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text) {
  SplitFile file = split_lines(text);
  CsvTable table;
  table.metadata = std::move(file.metadata);
  if (file.lines.empty()) throw DataError("csv has no header");
  for (auto c : split_cells(file.lines[0].text)) table.header.emplace_back(c);
  for (std::size_t r = 1; r < file.lines.size(); ++r) {
    const auto cells = split_cells(file.lines[r].text);
    if (cells.size() != table.header.size())
      throw ParseError("ragged row: expected " + std::to_string(table.header.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       file.lines[r].number, std::min(cells.size(), table.header.size()) + 1);
    table.rows.emplace_back(cells.begin(), cells.end());
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  try {
    return parse_csv(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

}  // namespace l1pca::dataio
