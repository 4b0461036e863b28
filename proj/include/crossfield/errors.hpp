// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_ERRORS_HPP
#define CROSSFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crossfield {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input row; carries the 1-based row number and offending column.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& what)
      : Error("row " + std::to_string(row) + ", column '" + column + "': " + what),
        row_(row),
        column_(std::move(column)) {}

  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

class DuplicateKeyError : public Error {
 public:
  explicit DuplicateKeyError(const std::string& key)
      : Error("duplicate id '" + key + "'"), key_(key) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// A cited publication has at least one (year, category) cell with no baseline.
class MissingBaselineError : public Error {
 public:
  using Error::Error;
};

class ZeroDenominatorError : public Error {
 public:
  using Error::Error;
};

// Degenerate statistic: MAD of zero, insufficient data, etc.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace crossfield

#endif  // CROSSFIELD_ERRORS_HPP
