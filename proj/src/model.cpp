// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/model.hpp"

#include <set>
#include <unordered_set>

#include "crossfield/csv.hpp"
#include "crossfield/errors.hpp"

namespace crossfield {

namespace {

constexpr std::array<std::string_view, kRankCount> kRankLabels = {
    "full_confirmed",      "full_probationary",      "associate_confirmed",
    "associate_probationary", "assistant_confirmed", "assistant_probationary",
    "research_assistant"};

// 2004-2008 yearly average stipends, in the probationary-assistant ratio.
constexpr std::array<double, kRankCount> kBuiltinCoefficients = {
    2.783,  // full confirmed (124,939)
    2.103,  // full probationary (94,442)
    2.018,  // associate confirmed (90,622)
    1.525,  // associate probationary (68,469)
    1.533,  // assistant confirmed (68,844)
    1.000,  // assistant probationary (44,899), the anchor
    1.820,  // research assistant (81,721)
};

}  // namespace

std::string_view rank_label(AcademicRank rank) {
  return kRankLabels[static_cast<std::size_t>(rank)];
}

std::optional<AcademicRank> parse_rank(std::string_view label) {
  for (std::size_t i = 0; i < kRankCount; ++i) {
    if (kRankLabels[i] == label) return static_cast<AcademicRank>(i);
  }
  return std::nullopt;
}

const StipendTable& StipendTable::builtin() {
  static const StipendTable table = [] {
    StipendTable t;
    t.coefficients_ = kBuiltinCoefficients;
    return t;
  }();
  return table;
}

StipendTable StipendTable::load(std::istream& in) {
  csv::Reader reader(in);
  reader.require_columns({"rank", "coefficient"});
  StipendTable table;
  std::array<bool, kRankCount> seen{};
  while (reader.next()) {
    const auto rank = parse_rank(reader.field("rank"));
    if (!rank) {
      throw ParseError(reader.row_number(), "rank",
                       "unknown rank '" + reader.field("rank") + "'");
    }
    const double coeff = reader.number("coefficient");
    if (coeff <= 0) {
      throw ParseError(reader.row_number(), "coefficient",
                       "coefficient must be positive");
    }
    const auto index = static_cast<std::size_t>(*rank);
    if (seen[index]) throw DuplicateKeyError(std::string(rank_label(*rank)));
    seen[index] = true;
    table.coefficients_[index] = coeff;
  }
  for (std::size_t i = 0; i < kRankCount; ++i) {
    if (!seen[i]) {
      throw Error("stipend table missing rank '" +
                  std::string(kRankLabels[i]) + "'");
    }
  }
  return table;
}

double stipend_coefficient(AcademicRank rank) {
  return StipendTable::builtin().coefficient(rank);
}

bool is_external_author(std::string_view author_ref) {
  return author_ref == "-" || author_ref.starts_with("ext:");
}

void CitationBaseline::set(int year, const std::string& category, double mean) {
  cells_[{year, category}] = mean;
}

std::optional<double> CitationBaseline::mean(int year,
                                             const std::string& category) const {
  const auto it = cells_.find({year, category});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

ValidationReport validate_roster(const std::vector<Researcher>& researchers,
                                 const std::vector<Publication>& publications) {
  ValidationReport report;

  std::unordered_set<std::string> ids;
  for (const auto& r : researchers) {
    if (!ids.insert(r.id).second) {
      report.issues.push_back({IssueKind::kDuplicateResearcherId, r.id,
                               "duplicate researcher id '" + r.id + "'"});
    }
    if (r.years_active <= 0) {
      report.issues.push_back(
          {IssueKind::kNonPositiveYearsActive, r.id,
           "researcher '" + r.id + "' has non-positive years_active"});
    }
  }

  std::unordered_set<std::string> pub_ids;
  for (const auto& p : publications) {
    if (!pub_ids.insert(p.id).second) {
      report.issues.push_back({IssueKind::kDuplicatePublicationId, p.id,
                               "duplicate publication id '" + p.id + "'"});
    }
    if (p.byline.empty()) {
      report.issues.push_back({IssueKind::kEmptyByline, p.id,
                               "publication '" + p.id + "' has an empty byline"});
    }
    for (const auto& a : p.byline) {
      if (!is_external_author(a.author_ref) && !ids.contains(a.author_ref)) {
        report.issues.push_back(
            {IssueKind::kDanglingAuthorRef, p.id,
             "publication '" + p.id + "' references unknown researcher '" +
                 a.author_ref + "'"});
      }
    }
  }
  return report;
}

}  // namespace crossfield
