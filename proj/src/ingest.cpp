// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/ingest.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "crossfield/csv.hpp"
#include "crossfield/errors.hpp"

namespace crossfield {

std::vector<Researcher> load_researchers(std::istream& in) {
  csv::Reader reader(in);
  reader.require_columns({"id", "field", "uda", "rank", "years_active",
                          "institution"});
  std::vector<Researcher> out;
  std::unordered_set<std::string> seen;
  while (reader.next()) {
    Researcher r;
    r.id = reader.field("id");
    if (r.id.empty()) throw ParseError(reader.row_number(), "id", "empty id");
    if (!seen.insert(r.id).second) throw DuplicateKeyError(r.id);
    r.field_id = reader.field("field");
    if (r.field_id.empty()) {
      throw ParseError(reader.row_number(), "field", "empty field id");
    }
    r.uda_id = reader.field("uda");
    const auto rank = parse_rank(reader.field("rank"));
    if (!rank) {
      throw ParseError(reader.row_number(), "rank",
                       "unknown rank '" + reader.field("rank") + "'");
    }
    r.rank = *rank;
    r.years_active = reader.number("years_active");
    r.institution_id = reader.field("institution");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Publication> load_publications(std::istream& in) {
  csv::Reader reader(in);
  reader.require_columns(
      {"id", "year", "categories", "citations", "convention", "byline"});
  std::vector<Publication> out;
  std::unordered_set<std::string> seen;
  while (reader.next()) {
    Publication p;
    p.id = reader.field("id");
    if (p.id.empty()) throw ParseError(reader.row_number(), "id", "empty id");
    if (!seen.insert(p.id).second) throw DuplicateKeyError(p.id);
    p.year = static_cast<int>(reader.integer("year"));
    p.subject_categories = csv::split(reader.field("categories"), ';');
    if (p.subject_categories.empty()) {
      throw ParseError(reader.row_number(), "categories",
                       "at least one subject category is required");
    }
    p.citations = reader.integer("citations");
    if (p.citations < 0) {
      throw ParseError(reader.row_number(), "citations",
                       "citations must be nonnegative");
    }
    const std::string& convention = reader.field("convention");
    if (convention == "alphabetical") {
      p.convention = BylineConvention::kAlphabetical;
    } else if (convention == "positional") {
      p.convention = BylineConvention::kPositional;
    } else {
      throw ParseError(reader.row_number(), "convention",
                       "unknown convention '" + convention + "'");
    }
    const auto tokens = csv::split(reader.field("byline"), ';');
    if (tokens.empty()) {
      throw ParseError(reader.row_number(), "byline", "empty byline");
    }
    int position = 1;
    for (const auto& token : tokens) {
      const std::size_t at = token.rfind('@');
      if (at == std::string::npos || at == 0) {
        throw ParseError(reader.row_number(), "byline",
                         "expected 'author_ref@institution', got '" + token +
                             "'");
      }
      p.byline.push_back(
          {token.substr(0, at), position++, token.substr(at + 1)});
    }
    out.push_back(std::move(p));
  }
  return out;
}

CitationBaseline load_baselines(std::istream& in) {
  csv::Reader reader(in);
  reader.require_columns({"year", "category", "mean_cited"});
  CitationBaseline baselines;
  while (reader.next()) {
    const int year = static_cast<int>(reader.integer("year"));
    const double mean = reader.number("mean_cited");
    if (mean <= 0) {
      throw ParseError(reader.row_number(), "mean_cited",
                       "baseline mean must be positive");
    }
    baselines.set(year, reader.field("category"), mean);
  }
  return baselines;
}

void write_baselines(const CitationBaseline& baselines, std::ostream& out) {
  out << "year,category,mean_cited\n";
  char buffer[64];
  for (const auto& [key, mean] : baselines.cells()) {
    std::snprintf(buffer, sizeof buffer, "%.12g", mean);
    out << key.first << ',' << csv::join_row({key.second}) << ',' << buffer
        << '\n';
  }
}

CitationBaseline compute_baselines(const std::vector<Publication>& publications) {
  if (publications.empty()) {
    throw InvalidArgumentError("cannot compute baselines from an empty corpus");
  }
  std::map<CitationBaseline::Key, std::pair<double, std::size_t>> cells;
  for (const auto& p : publications) {
    if (p.citations < 1) continue;  // only cited publications count
    for (const auto& category : p.subject_categories) {
      auto& [sum, count] = cells[{p.year, category}];
      sum += static_cast<double>(p.citations);
      ++count;
    }
  }
  CitationBaseline baselines;
  for (const auto& [key, acc] : cells) {
    baselines.set(key.first, key.second, acc.first / static_cast<double>(acc.second));
  }
  return baselines;
}

std::set<std::string> filter_eligible_fields(const Dataset& dataset,
                                             double min_cited_share) {
  // researcher id -> has at least one publication with >= 1 citation
  std::unordered_map<std::string, bool> cited;
  for (const auto& r : dataset.researchers) cited.emplace(r.id, false);
  for (const auto& p : dataset.publications) {
    if (p.citations < 1) continue;
    for (const auto& a : p.byline) {
      const auto it = cited.find(a.author_ref);
      if (it != cited.end()) it->second = true;
    }
  }

  std::map<std::string, std::pair<std::size_t, std::size_t>> per_field;
  for (const auto& r : dataset.researchers) {
    auto& [total, with_citation] = per_field[r.field_id];
    ++total;
    if (cited.at(r.id)) ++with_citation;
  }

  std::set<std::string> eligible;
  for (const auto& [field, counts] : per_field) {
    const double share =
        static_cast<double>(counts.second) / static_cast<double>(counts.first);
    if (share >= min_cited_share) eligible.insert(field);
  }
  return eligible;
}

}  // namespace crossfield
