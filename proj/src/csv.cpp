// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/csv.hpp"

#include <charconv>
#include <cstdlib>

#include "crossfield/errors.hpp"

namespace crossfield::csv {

std::vector<std::string> parse_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char c : f) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += f;
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char delimiter) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(delimiter, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

Reader::Reader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw Error("empty input: missing CSV header");
  }
  const auto names = parse_line(header);
  for (std::size_t i = 0; i < names.size(); ++i) {
    columns_[names[i]] = i;
  }
}

void Reader::require_columns(const std::vector<std::string>& required) const {
  for (const auto& name : required) {
    if (!columns_.contains(name)) {
      throw Error("missing required column '" + name + "'");
    }
  }
}

bool Reader::has_column(const std::string& name) const {
  return columns_.contains(name);
}

bool Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++row_number_;
    if (line.empty() || line == "\r") continue;
    current_ = parse_line(line);
    if (current_.size() < columns_.size()) {
      throw ParseError(row_number_, "",
                       "expected " + std::to_string(columns_.size()) +
                           " fields, got " + std::to_string(current_.size()));
    }
    return true;
  }
  return false;
}

const std::string& Reader::field(const std::string& column) const {
  const auto it = columns_.find(column);
  if (it == columns_.end()) throw Error("unknown column '" + column + "'");
  return current_[it->second];
}

double Reader::number(const std::string& column) const {
  const std::string& text = field(column);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ParseError(row_number_, column, "not a number: '" + text + "'");
  }
  return value;
}

long Reader::integer(const std::string& column) const {
  const std::string& text = field(column);
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(row_number_, column, "not an integer: '" + text + "'");
  }
  return value;
}

}  // namespace crossfield::csv
