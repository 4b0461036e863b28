// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_SYNTH_HPP
#define CROSSFIELD_SYNTH_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "crossfield/model.hpp"
#include "crossfield/scaling.hpp"

namespace crossfield {

struct FieldSpec {
  std::string field_id;
  std::size_t n = 0;
  double zero_share = 0;  // in [0, 1)
  double gpd_shape = 0;
  double gpd_scale = 0;   // > 0
  double gpd_location = 0;
  std::map<AcademicRank, double> rank_mix;  // optional, informational
};

// TOML-style spec file: one [field-id] section per field with keys
// n, zero_share, k, sigma, mu and optional rank_mix ("label:weight;...").
std::vector<FieldSpec> load_field_specs(std::istream& in);

// One score set per spec: exactly floor(zero_share * n) zeros plus GPD draws
// via inverse-CDF sampling, negatives clamped to 0. RNG is std::mt19937_64
// seeded per field from splitmix64(seed ^ fnv1a(field id)), with uniforms
// mapped as ((r >> 11) + 1) * 2^-53 in (0, 1]; output is byte-identical for
// identical (specs, seed) and survives field reordering.
std::vector<ScoreSet> generate_population(const std::vector<FieldSpec>& specs,
                                          std::uint64_t seed);

struct TopShareMetric {
  double p = 0;
  double max_abs_deviation = 0;  // max over fields of |share - p|
  std::size_t band_violations = 0;
};

struct EvaluationResult {
  ScalingFactorKind kind{};
  std::vector<TopShareMetric> per_p;
  // Max over a pooled-quantile score grid of the cross-field spread of
  // log10 CCDF; smaller means better curve superimposition.
  double ccdf_divergence = 0;
  std::vector<std::string> skipped_fields;  // zero/undefined denominator
};

// Standardizes with each factor kind, builds the pooled ranking, and scores
// each kind by per-field top-share band violations (per-field bands) and the
// CCDF spread metric. Requires at least 2 fields.
std::vector<EvaluationResult> evaluate_scaling_factors(
    const std::vector<ScoreSet>& fields,
    const std::vector<double>& ps = {0.05, 0.10, 0.20});

}  // namespace crossfield

#endif  // CROSSFIELD_SYNTH_HPP
