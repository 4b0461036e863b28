// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "crossfield/errors.hpp"

namespace crossfield {

namespace {

constexpr double kInfeasible = 1e15;

std::vector<double> sorted_copy(std::span<const double> data) {
  std::vector<double> v(data.begin(), data.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double quantile(std::span<const double> data, double q) {
  if (data.empty()) throw InvalidArgumentError("quantile of empty data");
  if (q < 0 || q > 1) throw InvalidArgumentError("quantile q outside [0, 1]");
  const auto v = sorted_copy(data);
  const auto n = v.size();
  if (q == 0) return v.front();
  if (q == 1) return v.back();
  const double h = q * static_cast<double>(n);
  const auto j = static_cast<std::size_t>(std::floor(h));
  if (h == std::floor(h)) {
    // Cut falls exactly between order statistics: midpoint convention.
    if (j == 0) return v.front();
    if (j >= n) return v.back();
    return 0.5 * (v[j - 1] + v[j]);
  }
  return v[std::min(j, n - 1)];
}

double median(std::span<const double> data) { return quantile(data, 0.5); }

DescriptiveStats descriptive_stats(const ScoreSet& scores) {
  const std::size_t n = scores.entries.size();
  if (n < 2) {
    throw DegenerateError("field '" + scores.field_id +
                          "': descriptive statistics require n >= 2");
  }
  std::vector<double> values;
  values.reserve(n);
  std::size_t zeros = 0;
  for (const auto& [id, score] : scores.entries) {
    values.push_back(score);
    if (score == 0) ++zeros;
  }

  DescriptiveStats stats;
  stats.field_id = scores.field_id;
  stats.n = n;
  stats.pct_zero = 100.0 * static_cast<double>(zeros) / static_cast<double>(n);
  const double nd = static_cast<double>(n);
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / nd;

  double m2 = 0, m3 = 0;
  for (double x : values) {
    const double d = x - stats.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double variance = m2 / (nd - 1.0);
  const double sd = std::sqrt(variance);
  if (sd == 0) {
    stats.degenerate = true;
    stats.coeff_variation = 0;
    stats.skewness = 0;
  } else {
    stats.coeff_variation = stats.mean != 0 ? 100.0 * sd / stats.mean : 0;
    // Adjusted Fisher-Pearson: g1 * sqrt(n(n-1)) / (n-2).
    const double g1 = (m3 / nd) / std::pow(m2 / nd, 1.5);
    stats.skewness = n > 2 ? g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0) : g1;
  }
  stats.median = median(values);
  stats.iqr = quantile(values, 0.75) - quantile(values, 0.25);
  return stats;
}

double gpd_log_likelihood(std::span<const double> data, double shape,
                          double scale, double location) {
  const auto n = static_cast<double>(data.size());
  if (scale <= 0) return -std::numeric_limits<double>::infinity();
  double ll = -n * std::log(scale);
  for (double x : data) {
    const double z = (x - location) / scale;
    if (z < 0) return -std::numeric_limits<double>::infinity();
    if (std::abs(shape) < 1e-9) {
      ll -= z;
    } else {
      const double arg = 1.0 + shape * z;
      if (arg <= 0) return -std::numeric_limits<double>::infinity();
      ll -= (1.0 + 1.0 / shape) * std::log(arg);
    }
  }
  return ll;
}

double gpd_cdf(double x, const GpdFit& fit) {
  const double z = (x - fit.location) / fit.scale;
  if (z <= 0) return 0.0;
  if (std::abs(fit.shape) < 1e-9) return 1.0 - std::exp(-z);
  const double arg = 1.0 + fit.shape * z;
  if (arg <= 0) return 1.0;  // beyond the upper endpoint (k < 0)
  return 1.0 - std::pow(arg, -1.0 / fit.shape);
}

namespace {

// Negative log-likelihood with a finite penalty outside the feasible region,
// parameterized as (k, log sigma, mu) for the simplex search.
double gpd_objective(std::span<const double> data, const std::array<double, 3>& t,
                     double min_x) {
  const double shape = t[0];
  const double scale = std::exp(t[1]);
  const double location = t[2];
  if (location > min_x) {
    return kInfeasible * (1.0 + (location - min_x));
  }
  const double ll = gpd_log_likelihood(data, shape, scale, location);
  if (!std::isfinite(ll)) return kInfeasible;
  return -ll;
}

// Standard Nelder-Mead over 3 parameters; deterministic for a fixed start.
std::array<double, 3> nelder_mead(
    std::span<const double> data, std::array<double, 3> start, double min_x,
    std::size_t max_iter = 600) {
  constexpr std::size_t dim = 3;
  using Point = std::array<double, 3>;
  std::array<std::pair<double, Point>, dim + 1> simplex;
  simplex[0] = {gpd_objective(data, start, min_x), start};
  const std::array<double, 3> steps = {0.1, 0.2, 0.01};
  for (std::size_t i = 0; i < dim; ++i) {
    Point p = start;
    p[i] += steps[i];
    simplex[i + 1] = {gpd_objective(data, p, min_x), p};
  }

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (std::abs(simplex[dim].first - simplex[0].first) <
        1e-10 * (1.0 + std::abs(simplex[0].first))) {
      break;
    }
    Point centroid{};
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i].second[d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto combine = [&](double coeff) {
      Point p;
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = centroid[d] + coeff * (simplex[dim].second[d] - centroid[d]);
      }
      return p;
    };

    const Point reflected = combine(-1.0);
    const double fr = gpd_objective(data, reflected, min_x);
    if (fr < simplex[0].first) {
      const Point expanded = combine(-2.0);
      const double fe = gpd_objective(data, expanded, min_x);
      simplex[dim] = fe < fr ? std::pair{fe, expanded} : std::pair{fr, reflected};
    } else if (fr < simplex[dim - 1].first) {
      simplex[dim] = {fr, reflected};
    } else {
      const Point contracted = combine(0.5);
      const double fc = gpd_objective(data, contracted, min_x);
      if (fc < simplex[dim].first) {
        simplex[dim] = {fc, contracted};
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t d = 0; d < dim; ++d) {
            simplex[i].second[d] =
                0.5 * (simplex[i].second[d] + simplex[0].second[d]);
          }
          simplex[i].first = gpd_objective(data, simplex[i].second, min_x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return simplex[0].second;
}

}  // namespace

GpdFit fit_gpd(std::span<const double> scores) {
  if (scores.size() < 30) {
    throw InvalidArgumentError("GPD fitting requires at least 30 observations");
  }
  for (double x : scores) {
    if (x < 0) throw InvalidArgumentError("GPD fitting requires nonnegative scores");
  }

  const auto [min_it, max_it] = std::minmax_element(scores.begin(), scores.end());
  const double min_x = *min_it;
  const double range = *max_it - *min_it;
  if (range <= 0) throw FitError("all observations identical; nothing to fit");
  const double epsilon = 1e-6 * range;

  const double nd = static_cast<double>(scores.size());
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / nd;
  double ss = 0;
  for (double x : scores) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (nd - 1.0));

  std::vector<double> location_starts = {min_x - epsilon};
  if (min_x > 0) location_starts.push_back(0.0);

  GpdFit best;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double k = -0.4; k <= 1.0 + 1e-12; k += 0.2) {
    for (double s : {0.5 * sd, sd, 2.0 * sd}) {
      for (double mu : location_starts) {
        const auto refined =
            nelder_mead(scores, {k, std::log(s), mu}, min_x);
        const double ll = gpd_log_likelihood(scores, refined[0],
                                             std::exp(refined[1]), refined[2]);
        if (ll > best_ll) {  // ties keep the earlier grid point
          best_ll = ll;
          best = {refined[0], std::exp(refined[1]), refined[2], ll};
        }
      }
    }
  }
  if (!std::isfinite(best_ll)) {
    throw FitError("no feasible GPD parameters found");
  }
  return best;
}

double ks_critical_value_5pct(std::size_t n) {
  return 1.358 / std::sqrt(static_cast<double>(n));
}

KsResult ks_test(std::span<const double> scores, const GpdFit& fit) {
  if (scores.empty()) throw InvalidArgumentError("KS test on empty sample");
  const auto sorted = sorted_copy(scores);
  const double n = static_cast<double>(sorted.size());
  double statistic = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = gpd_cdf(sorted[i], fit);
    const double below = f - static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n - f;
    statistic = std::max({statistic, below, above});
  }
  KsResult result;
  result.statistic = statistic;
  result.critical_value_5pct = ks_critical_value_5pct(sorted.size());
  result.reject = result.statistic > result.critical_value_5pct;
  return result;
}

std::vector<CcdfPoint> ccdf_series(const ScoreSet& scores, double offset) {
  if (scores.entries.empty()) {
    throw InvalidArgumentError("CCDF of an empty score set");
  }
  std::vector<double> values;
  values.reserve(scores.entries.size());
  for (const auto& [id, score] : scores.entries) values.push_back(score);
  std::sort(values.begin(), values.end());

  const double n = static_cast<double>(values.size());
  std::vector<CcdfPoint> series;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    series.push_back({values[i] + offset,
                      static_cast<double>(values.size() - i) / n});
  }
  return series;
}

MadResult mad_outliers(const std::vector<PooledScore>& pooled,
                       double threshold) {
  if (pooled.empty()) throw InvalidArgumentError("MAD on an empty pool");
  std::vector<double> values;
  values.reserve(pooled.size());
  for (const auto& s : pooled) {
    if (s.score <= 0) {
      throw DegenerateError(
          "MAD pool must contain strictly positive scores (offender: '" +
          s.researcher_id + "')");
    }
    values.push_back(s.score);
  }

  MadResult result;
  result.median = median(values);
  std::vector<double> deviations;
  deviations.reserve(values.size());
  for (double x : values) deviations.push_back(std::abs(x - result.median));
  result.mad = median(deviations);
  if (result.mad == 0) {
    throw DegenerateError("degenerate MAD: more than half the scores coincide");
  }

  std::map<std::string, FieldOutlierIncidence> per_field;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    OutlierEntry entry;
    entry.researcher_id = pooled[i].researcher_id;
    entry.field_id = pooled[i].field_id;
    entry.score = pooled[i].score;
    entry.deviation_ratio = deviations[i] / result.mad;
    entry.outlier = entry.deviation_ratio > threshold;
    result.entries.push_back(entry);

    auto [it, inserted] = per_field.try_emplace(entry.field_id);
    if (inserted) {
      it->second.field_id = entry.field_id;
      order.push_back(entry.field_id);
    }
    ++it->second.nonzero_size;
    if (entry.outlier) ++it->second.flagged;
  }
  std::sort(order.begin(), order.end());
  for (const auto& field : order) {
    auto& inc = per_field[field];
    inc.incidence = static_cast<double>(inc.flagged) /
                    static_cast<double>(inc.nonzero_size);
    result.per_field.push_back(inc);
  }
  return result;
}

}  // namespace crossfield
