// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "crossfield/analysis.hpp"
#include "crossfield/errors.hpp"

namespace crossfield {

std::string_view factor_label(ScalingFactorKind kind) {
  switch (kind) {
    case ScalingFactorKind::kMeanAll: return "mean_all";
    case ScalingFactorKind::kMeanNonzero: return "mean_nonzero";
    case ScalingFactorKind::kMedianAll: return "median_all";
    case ScalingFactorKind::kMedianNonzero: return "median_nonzero";
  }
  return "";
}

std::optional<ScalingFactorKind> parse_factor(std::string_view label) {
  for (auto kind : kAllFactorKinds) {
    if (factor_label(kind) == label) return kind;
  }
  return std::nullopt;
}

std::optional<double> FieldScalingStats::denominator(
    ScalingFactorKind kind) const {
  switch (kind) {
    case ScalingFactorKind::kMeanAll: return mean;
    case ScalingFactorKind::kMeanNonzero: return mean_nonzero;
    case ScalingFactorKind::kMedianAll: return median;
    case ScalingFactorKind::kMedianNonzero: return median_nonzero;
  }
  return std::nullopt;
}

FieldScalingStats field_scaling_stats(const ScoreSet& scores) {
  if (scores.entries.empty()) {
    throw InvalidArgumentError("field '" + scores.field_id +
                               "' has no score entries");
  }
  FieldScalingStats stats;
  stats.field_id = scores.field_id;
  stats.n = scores.entries.size();

  std::vector<double> all;
  std::vector<double> positive;
  all.reserve(stats.n);
  for (const auto& [id, score] : scores.entries) {
    all.push_back(score);
    if (score > 0) positive.push_back(score);
  }
  stats.n_zero = stats.n - positive.size();
  stats.mean = std::accumulate(all.begin(), all.end(), 0.0) /
               static_cast<double>(stats.n);
  stats.median = median(all);
  if (!positive.empty()) {
    stats.mean_nonzero = std::accumulate(positive.begin(), positive.end(), 0.0) /
                         static_cast<double>(positive.size());
    stats.median_nonzero = median(positive);
  }
  return stats;
}

ScoreSet standardize(const ScoreSet& scores, ScalingFactorKind kind) {
  const auto stats = field_scaling_stats(scores);
  const auto denom = stats.denominator(kind);
  if (!denom || *denom <= 0) {
    throw ZeroDenominatorError("field '" + scores.field_id + "': " +
                               std::string(factor_label(kind)) +
                               " denominator is zero or undefined");
  }
  ScoreSet out;
  out.field_id = scores.field_id;
  out.kind = ScoreKind::kStandardized;
  out.entries.reserve(scores.entries.size());
  for (const auto& [id, score] : scores.entries) {
    out.entries.emplace_back(id, score / *denom);
  }
  return out;
}

std::vector<RankedEntry> pooled_ranking(const std::vector<ScoreSet>& fields) {
  if (!fields.empty()) {
    const ScoreKind kind = fields.front().kind;
    for (const auto& f : fields) {
      if (f.kind != kind) {
        throw InvalidArgumentError(
            "pooled ranking requires all fields to carry the same score kind");
      }
    }
  }

  std::vector<RankedEntry> ranking;
  for (const auto& f : fields) {
    for (const auto& [id, score] : f.entries) {
      ranking.push_back({id, f.field_id, score, 0});
    }
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedEntry& a, const RankedEntry& b) {
                     return a.score > b.score;
                   });
  // Competition ranks: ties share the rank of the first of their run.
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (i > 0 && ranking[i].score == ranking[i - 1].score) {
      ranking[i].rank = ranking[i - 1].rank;
    } else {
      ranking[i].rank = i + 1;
    }
  }
  return ranking;
}

std::vector<FieldTopShare> top_share(const std::vector<RankedEntry>& ranking,
                                     double p,
                                     std::optional<std::size_t> fixed_band_n) {
  if (!(p > 0 && p < 1)) {
    throw InvalidArgumentError("top-share p must lie in (0, 1)");
  }
  if (ranking.empty()) {
    throw InvalidArgumentError("top_share requires a nonempty ranking");
  }

  const std::size_t total = ranking.size();
  std::size_t cutoff = static_cast<std::size_t>(
      std::floor(p * static_cast<double>(total)));
  // Boundary ties: everyone tied with the cutoff entry is marked too.
  std::size_t marked_count = cutoff;
  if (cutoff > 0) {
    const double boundary = ranking[cutoff - 1].score;
    while (marked_count < total && ranking[marked_count].score == boundary) {
      ++marked_count;
    }
  }

  std::map<std::string, FieldTopShare> per_field;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < total; ++i) {
    auto [it, inserted] = per_field.try_emplace(ranking[i].field_id);
    if (inserted) {
      it->second.field_id = ranking[i].field_id;
      order.push_back(ranking[i].field_id);
    }
    ++it->second.field_size;
    if (i < marked_count) ++it->second.marked;
  }

  std::vector<FieldTopShare> out;
  std::sort(order.begin(), order.end());
  for (const auto& field : order) {
    FieldTopShare& share = per_field[field];
    share.share = static_cast<double>(share.marked) /
                  static_cast<double>(share.field_size);
    const double n_ref = static_cast<double>(
        fixed_band_n ? *fixed_band_n : share.field_size);
    const double sd = std::sqrt(p * (1.0 - p) / n_ref);
    share.band_low = p - sd;
    share.band_high = p + sd;
    share.violation = share.share < share.band_low || share.share > share.band_high;
    out.push_back(share);
  }
  return out;
}

}  // namespace crossfield
