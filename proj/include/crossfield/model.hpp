// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_MODEL_HPP
#define CROSSFIELD_MODEL_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crossfield {

enum class AcademicRank {
  kFullConfirmed,
  kFullProbationary,
  kAssociateConfirmed,
  kAssociateProbationary,
  kAssistantConfirmed,
  kAssistantProbationary,
  kResearchAssistant,
};

inline constexpr std::size_t kRankCount = 7;

inline constexpr std::array<AcademicRank, kRankCount> kAllRanks = {
    AcademicRank::kFullConfirmed,        AcademicRank::kFullProbationary,
    AcademicRank::kAssociateConfirmed,   AcademicRank::kAssociateProbationary,
    AcademicRank::kAssistantConfirmed,   AcademicRank::kAssistantProbationary,
    AcademicRank::kResearchAssistant,
};

// Text labels used in the CSV schemas.
std::string_view rank_label(AcademicRank rank);
std::optional<AcademicRank> parse_rank(std::string_view label);

// Per-rank stipend coefficients: the ratio of a rank's average yearly stipend
// to the probationary assistant professor's stipend. The built-in table ships
// the 2004-2008 Italian averages; an override can be loaded from CSV.
class StipendTable {
 public:
  static const StipendTable& builtin();

  // CSV with header "rank,coefficient"; all 7 ranks must be present.
  static StipendTable load(std::istream& in);

  double coefficient(AcademicRank rank) const {
    return coefficients_[static_cast<std::size_t>(rank)];
  }

 private:
  std::array<double, kRankCount> coefficients_{};
};

// Coefficient from the built-in table.
double stipend_coefficient(AcademicRank rank);

struct Researcher {
  std::string id;
  std::string field_id;  // SDS code
  std::string uda_id;
  AcademicRank rank{};
  double years_active{};  // t: years of work inside the observation window
  std::string institution_id;
};

struct Authorship {
  std::string author_ref;  // researcher id, or an external marker
  int position{};          // 1-based byline index
  std::string institution_id;
};

// Byline slots not matching any roster researcher must use an external
// marker; everything else is reported as dangling by validate_roster.
bool is_external_author(std::string_view author_ref);

enum class BylineConvention {
  kAlphabetical,
  kPositional,  // life-science position weighting
};

struct Publication {
  std::string id;
  int year{};
  std::vector<std::string> subject_categories;
  long citations{};  // accumulated at the census date
  std::vector<Authorship> byline;
  BylineConvention convention{BylineConvention::kAlphabetical};
};

// (year, subject category) -> mean citations of cited publications.
class CitationBaseline {
 public:
  using Key = std::pair<int, std::string>;

  void set(int year, const std::string& category, double mean);
  std::optional<double> mean(int year, const std::string& category) const;
  const std::map<Key, double>& cells() const { return cells_; }

 private:
  std::map<Key, double> cells_;
};

enum class ScoreKind {
  kRawFss,
  kFssStar,
  kStandardized,
};

struct ScoreSet {
  std::string field_id;
  std::vector<std::pair<std::string, double>> entries;  // (researcher id, score)
  ScoreKind kind{ScoreKind::kFssStar};
};

enum class IssueKind {
  kDanglingAuthorRef,
  kDuplicateResearcherId,
  kDuplicatePublicationId,
  kNonPositiveYearsActive,
  kEmptyByline,
};

struct ValidationIssue {
  IssueKind kind{};
  std::string subject;  // id of the offending researcher/publication
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_roster(const std::vector<Researcher>& researchers,
                                 const std::vector<Publication>& publications);

}  // namespace crossfield

#endif  // CROSSFIELD_MODEL_HPP
