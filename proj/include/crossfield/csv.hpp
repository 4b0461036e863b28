// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_CSV_HPP
#define CROSSFIELD_CSV_HPP

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace crossfield::csv {

// Minimal RFC-4180-ish reader: comma-delimited, double quotes for fields
// containing commas or quotes. Row numbers are 1-based counting the header.
class Reader {
 public:
  explicit Reader(std::istream& in);

  // Header must contain every name in `required`; extra columns are kept.
  void require_columns(const std::vector<std::string>& required) const;
  bool has_column(const std::string& name) const;

  // Advances to the next data row; false at EOF. Blank lines are skipped.
  bool next();

  std::size_t row_number() const { return row_number_; }
  const std::string& field(const std::string& column) const;

  // Typed accessors throw ParseError naming the row and column.
  double number(const std::string& column) const;
  long integer(const std::string& column) const;

 private:
  std::istream& in_;
  std::map<std::string, std::size_t> columns_;
  std::vector<std::string> current_;
  std::size_t row_number_ = 1;  // header consumed by the constructor
};

std::vector<std::string> parse_line(const std::string& line);
std::string join_row(const std::vector<std::string>& fields);

// Splits on a sub-delimiter (no quoting); empty input -> empty list.
std::vector<std::string> split(const std::string& text, char delimiter);

}  // namespace crossfield::csv

#endif  // CROSSFIELD_CSV_HPP
