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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l1pca/types.hpp"

// Matrix files and preprocessing.
//
// Matrix CSV: one observation per line, comma-separated numbers. Lines whose
// first non-blank character is '#' carry metadata and are kept verbatim
// (minus the marker). The first data line may instead be a header of column
// names, recognised by containing no numeric cell at all. Blank lines are
// skipped. Anything else that fails to parse is an error naming the line and
// column.
namespace l1pca::dataio {

DataMatrix parse_matrix(std::string_view text);
// Throws IoError if the file cannot be opened, ParseError on bad content.
DataMatrix read_matrix(const std::filesystem::path& path);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

void write_matrix(std::ostream& out, const Matrix& values,
                  const std::vector<std::string>& metadata = {},
                  const std::vector<std::string>& column_names = {});
void write_matrix(const std::filesystem::path& path, const Matrix& values,
                  const std::vector<std::string>& metadata = {},
                  const std::vector<std::string>& column_names = {});
void write_matrix(const std::filesystem::path& path, const DataMatrix& data);

struct Standardized {
  DataMatrix data;
  std::vector<Index> kept_columns;  // output column k came from input kept_columns[k]
};

// Drops columns whose sample standard deviation is below `min_std`, then
// centres and scales the rest to mean 0 and sample standard deviation 1.
// Throws ParameterError for fewer than two rows and DataError when no column
// survives.
Standardized standardize(const DataMatrix& a, double min_std = 1e-12);

struct LabeledTable {
  RowMatrix values;
  std::vector<std::string> labels;
  std::vector<std::string> attribute_names;
};

// Labeled CSV: same conventions as the matrix format, one column holds a
// (string) label. `label_column` is a header name or a 0-based index; the
// last column by default.
LabeledTable parse_labeled(std::string_view text,
                           const std::optional<std::string>& label_column = std::nullopt);
LabeledTable read_labeled(const std::filesystem::path& path,
                          const std::optional<std::string>& label_column = std::nullopt);

struct LabelGroup {
  std::string label;
  std::vector<Index> rows;  // indices into the source table
  DataMatrix raw;
  // Empty when the group cannot be standardized (one row, or every
  // attribute constant within the group).
  std::optional<Standardized> standardized;
};

// Groups rows by label, largest group first (ties by label), and keeps the
// first `top_k`. Throws ParameterError if top_k < 1 or the table is empty.
std::vector<LabelGroup> partition_by_label(const LabeledTable& table, Index top_k);

// Plain string table for result files.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws DataError if the column is absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace l1pca::dataio
