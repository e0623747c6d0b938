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

#include <stdexcept>
#include <string>

namespace l1pca {

// Root of everything the library throws. The CLI maps the subclasses onto
// its exit codes, so new error kinds should derive from one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an out-of-contract argument (bad p, bad config, mismatch).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data is unusable: malformed file, non-finite values, nothing left
// after preprocessing.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : DataError(what + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

// A decomposition failed to converge or produced an invalid result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Raised by the first-order eigenpair update when two eigenvalues are too
// close for the perturbation formula; callers fall back to a full solve.
class DegenerateSpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace l1pca
