// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_INDICATOR_HPP
#define CROSSFIELD_INDICATOR_HPP

#include <string>
#include <vector>

#include "crossfield/model.hpp"

namespace crossfield {

// Positional byline weight tuple. Defaults follow the life-science practice:
// intramural anchors 40% each with 20% shared by the middle, extramural
// anchors 30% each, the two inner anchors 15% each, 10% shared by the rest.
struct PositionalWeights {
  double intramural_anchor = 0.40;
  double intramural_rest = 0.20;
  double extramural_anchor = 0.30;
  double extramural_inner = 0.15;
  double extramural_rest = 0.10;
};

// Fractional contribution of every byline position, in byline order. Weights
// always sum to exactly 1: alphabetical bylines and n <= 2 split evenly; for
// positional bylines with n >= 3 each position receives its raw role weight
// once and the vector is renormalized (only degenerate n = 3, 4 overlaps are
// affected). Intramural means first and last authors share an institution.
std::vector<double> contribution_weights(const Publication& publication,
                                         const PositionalWeights& weights = {});

// Weight of one 1-based byline position; throws InvalidArgumentError when the
// position is out of range.
double fractional_contribution(const Publication& publication, int position,
                               const PositionalWeights& weights = {});

// c / c-bar. The per-publication baseline is the arithmetic mean of the cells
// for its categories. Zero citations give 0 regardless of cell availability;
// a cited publication missing any cell raises MissingBaselineError naming the
// absent (year, category) pairs.
double normalized_citation(const Publication& publication,
                           const CitationBaseline& baselines);

// FSS = (1/t) * sum_i (c_i / cbar_i) * f_i over the researcher's publications.
double fss(const Researcher& researcher,
           const std::vector<Publication>& publications,
           const CitationBaseline& baselines,
           const PositionalWeights& weights = {});

// FSS* = FSS / stipend coefficient.
double fss_star(double fss_value, AcademicRank rank,
                const StipendTable& table = StipendTable::builtin());

// Fractional publication count per year of work: (sum_i f_i) / t.
double gross_productivity(const Researcher& researcher,
                          const std::vector<Publication>& publications,
                          const PositionalWeights& weights = {});

// 100 * (n - r) / n with r the 1-based descending competition rank (tied
// scores share the best rank among them). Throws InvalidArgumentError when
// the researcher is absent.
double percentile_rank(
    const std::vector<std::pair<std::string, double>>& field_scores,
    const std::string& researcher_id);

}  // namespace crossfield

#endif  // CROSSFIELD_INDICATOR_HPP
