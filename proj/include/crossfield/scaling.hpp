// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_SCALING_HPP
#define CROSSFIELD_SCALING_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crossfield/model.hpp"

namespace crossfield {

enum class ScalingFactorKind {
  kMeanAll,
  kMeanNonzero,
  kMedianAll,
  kMedianNonzero,
};

inline constexpr std::array<ScalingFactorKind, 4> kAllFactorKinds = {
    ScalingFactorKind::kMeanAll, ScalingFactorKind::kMeanNonzero,
    ScalingFactorKind::kMedianAll, ScalingFactorKind::kMedianNonzero};

std::string_view factor_label(ScalingFactorKind kind);
std::optional<ScalingFactorKind> parse_factor(std::string_view label);

struct FieldScalingStats {
  std::string field_id;
  std::size_t n = 0;
  std::size_t n_zero = 0;
  double mean = 0;
  double median = 0;
  // Undefined when the field is all-zero.
  std::optional<double> mean_nonzero;
  std::optional<double> median_nonzero;

  std::optional<double> denominator(ScalingFactorKind kind) const;
};

// Median of even-length lists is the midpoint of the two central order
// statistics. Throws InvalidArgumentError on an empty score set.
FieldScalingStats field_scaling_stats(const ScoreSet& scores);

// Divides every score by the field's selected denominator; zeros map to
// zeros. Throws ZeroDenominatorError when the denominator is zero or
// undefined (fields with nil median must be excluded upstream).
ScoreSet standardize(const ScoreSet& scores, ScalingFactorKind kind);

struct RankedEntry {
  std::string researcher_id;
  std::string field_id;
  double score = 0;
  std::size_t rank = 0;  // 1-based competition rank
};

// Global descending ranking over all fields; ties share the minimum rank.
// All inputs must carry the same score kind.
std::vector<RankedEntry> pooled_ranking(const std::vector<ScoreSet>& fields);

struct FieldTopShare {
  std::string field_id;
  std::size_t field_size = 0;
  std::size_t marked = 0;
  double share = 0;       // marked / field_size
  double band_low = 0;    // p - sqrt(p(1-p)/n_ref)
  double band_high = 0;
  bool violation = false;
};

// Marks the top floor(p*N) of the global ranking (boundary ties included)
// and reports each field's share against its admissible band. n_ref defaults
// to the field's own size; pass `fixed_band_n` to use one global reference
// size instead (reproduces the published bands with n_ref = 88).
std::vector<FieldTopShare> top_share(const std::vector<RankedEntry>& ranking,
                                     double p,
                                     std::optional<std::size_t> fixed_band_n = {});

}  // namespace crossfield

#endif  // CROSSFIELD_SCALING_HPP
