// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/indicator.hpp"

#include <algorithm>
#include <numeric>

#include "crossfield/errors.hpp"

namespace crossfield {

std::vector<double> contribution_weights(const Publication& publication,
                                         const PositionalWeights& weights) {
  const std::size_t n = publication.byline.size();
  if (n == 0) throw InvalidArgumentError("publication has an empty byline");

  std::vector<double> out(n, 0.0);
  if (publication.convention == BylineConvention::kAlphabetical || n <= 2) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(n));
    return out;
  }

  const bool intramural = publication.byline.front().institution_id ==
                          publication.byline.back().institution_id;
  if (intramural) {
    out.front() = weights.intramural_anchor;
    out.back() = weights.intramural_anchor;
    const double rest = weights.intramural_rest / static_cast<double>(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = rest;
  } else {
    // Each position takes its maximum applicable role weight once; overlaps
    // (n = 3, 4) are resolved by the renormalization below.
    out.front() = weights.extramural_anchor;
    out.back() = weights.extramural_anchor;
    out[1] = std::max(out[1], weights.extramural_inner);
    out[n - 2] = std::max(out[n - 2], weights.extramural_inner);
    if (n > 4) {
      const double rest = weights.extramural_rest / static_cast<double>(n - 4);
      for (std::size_t i = 2; i + 2 < n; ++i) out[i] = rest;
    }
  }

  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& w : out) w /= total;
  return out;
}

double fractional_contribution(const Publication& publication, int position,
                               const PositionalWeights& weights) {
  if (position < 1 ||
      static_cast<std::size_t>(position) > publication.byline.size()) {
    throw InvalidArgumentError("byline position " + std::to_string(position) +
                               " out of range for publication '" +
                               publication.id + "'");
  }
  return contribution_weights(publication, weights)[position - 1];
}

double normalized_citation(const Publication& publication,
                           const CitationBaseline& baselines) {
  if (publication.citations == 0) return 0.0;

  double sum = 0.0;
  std::string missing;
  for (const auto& category : publication.subject_categories) {
    const auto cell = baselines.mean(publication.year, category);
    if (!cell) {
      if (!missing.empty()) missing += ", ";
      missing += "(" + std::to_string(publication.year) + ", " + category + ")";
      continue;
    }
    sum += *cell;
  }
  if (!missing.empty()) {
    throw MissingBaselineError("publication '" + publication.id +
                               "' is cited but has no baseline for " + missing);
  }
  const double cbar =
      sum / static_cast<double>(publication.subject_categories.size());
  return static_cast<double>(publication.citations) / cbar;
}

namespace {

// Weight of `researcher` in the byline, 0 when absent.
double weight_of(const Researcher& researcher, const Publication& publication,
                 const PositionalWeights& weights) {
  for (const auto& a : publication.byline) {
    if (a.author_ref == researcher.id) {
      return fractional_contribution(publication, a.position, weights);
    }
  }
  return 0.0;
}

}  // namespace

double fss(const Researcher& researcher,
           const std::vector<Publication>& publications,
           const CitationBaseline& baselines,
           const PositionalWeights& weights) {
  if (researcher.years_active <= 0) {
    throw InvalidArgumentError("researcher '" + researcher.id +
                               "' has non-positive years_active");
  }
  double sum = 0.0;
  for (const auto& p : publications) {
    const double f = weight_of(researcher, p, weights);
    if (f == 0.0) continue;
    sum += normalized_citation(p, baselines) * f;
  }
  return sum / researcher.years_active;
}

double fss_star(double fss_value, AcademicRank rank, const StipendTable& table) {
  return fss_value / table.coefficient(rank);
}

double gross_productivity(const Researcher& researcher,
                          const std::vector<Publication>& publications,
                          const PositionalWeights& weights) {
  if (researcher.years_active <= 0) {
    throw InvalidArgumentError("researcher '" + researcher.id +
                               "' has non-positive years_active");
  }
  double sum = 0.0;
  for (const auto& p : publications) {
    sum += weight_of(researcher, p, weights);
  }
  return sum / researcher.years_active;
}

double percentile_rank(
    const std::vector<std::pair<std::string, double>>& field_scores,
    const std::string& researcher_id) {
  const auto self =
      std::find_if(field_scores.begin(), field_scores.end(),
                   [&](const auto& e) { return e.first == researcher_id; });
  if (self == field_scores.end()) {
    throw InvalidArgumentError("researcher '" + researcher_id +
                               "' not present in the score list");
  }
  std::size_t better = 0;
  for (const auto& [id, score] : field_scores) {
    if (score > self->second) ++better;
  }
  const auto n = static_cast<double>(field_scores.size());
  const auto rank = static_cast<double>(better + 1);  // minimum (competition) rank
  return 100.0 * (n - rank) / n;
}

}  // namespace crossfield
