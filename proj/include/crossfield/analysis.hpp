// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_ANALYSIS_HPP
#define CROSSFIELD_ANALYSIS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crossfield/model.hpp"

namespace crossfield {

// Quantile with the midpoint ("type 2") convention: exact order statistic at
// interior cut points, midpoint of the two central order statistics when the
// cut falls between them. q in [0, 1]; data need not be sorted.
double quantile(std::span<const double> data, double q);
double median(std::span<const double> data);

struct DescriptiveStats {
  std::string field_id;
  std::size_t n = 0;
  double pct_zero = 0;         // percentage, 0..100
  double mean = 0;
  double coeff_variation = 0;  // 100 * sd / mean
  double median = 0;
  double iqr = 0;
  double skewness = 0;         // adjusted Fisher-Pearson sample skewness
  bool degenerate = false;     // zero variance: CV/skewness reported as 0
};

// Requires n >= 2 (DegenerateError otherwise). sd uses the n-1 denominator.
DescriptiveStats descriptive_stats(const ScoreSet& scores);

struct GpdFit {
  double shape = 0;     // k
  double scale = 0;     // sigma > 0
  double location = 0;  // mu
  double log_likelihood = 0;
};

double gpd_cdf(double x, const GpdFit& fit);
double gpd_log_likelihood(std::span<const double> data, double shape,
                          double scale, double location);

// Maximum-likelihood fit over (k, sigma, mu) subject to the support
// constraints, via a fixed multi-start grid with Nelder-Mead refinement.
// Deterministic given the data. Requires n >= 30 and nonnegative scores.
GpdFit fit_gpd(std::span<const double> scores);

struct KsResult {
  double statistic = 0;
  double critical_value_5pct = 0;  // 1.358 / sqrt(n)
  bool reject = false;             // statistic > critical value
};

double ks_critical_value_5pct(std::size_t n);

// Two-sided sup gap between the empirical CDF and the fitted GPD CDF,
// checking both step sides at every sample point.
KsResult ks_test(std::span<const double> scores, const GpdFit& fit);

struct CcdfPoint {
  double x = 0;  // score + offset
  double y = 0;  // P(X >= score)
};

// Distinct scores ascending; y starts at exactly 1 and is nonincreasing.
// The offset (default 0.05) keeps zero scores on a log axis.
std::vector<CcdfPoint> ccdf_series(const ScoreSet& scores, double offset = 0.05);

struct OutlierEntry {
  std::string researcher_id;
  std::string field_id;
  double score = 0;
  double deviation_ratio = 0;  // |x - median| / MAD
  bool outlier = false;
};

struct FieldOutlierIncidence {
  std::string field_id;
  std::size_t nonzero_size = 0;
  std::size_t flagged = 0;
  double incidence = 0;  // flagged / nonzero_size
};

struct MadResult {
  double median = 0;
  double mad = 0;
  std::vector<OutlierEntry> entries;
  std::vector<FieldOutlierIncidence> per_field;
};

struct PooledScore {
  std::string researcher_id;
  std::string field_id;
  double score = 0;
};

// MAD outlier detection over one pooled distribution of strictly positive
// scores: flag x when |x - median| / MAD > threshold. Throws DegenerateError
// when MAD is 0 or any score is not strictly positive.
MadResult mad_outliers(const std::vector<PooledScore>& pooled,
                       double threshold = 5.0);

}  // namespace crossfield

#endif  // CROSSFIELD_ANALYSIS_HPP
