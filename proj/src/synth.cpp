// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "crossfield/analysis.hpp"
#include "crossfield/errors.hpp"
#include "crossfield/log.hpp"

namespace crossfield {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

// Mapped from the raw 64-bit stream so draws do not depend on library
// distribution internals. Uniform in (0, 1].
double next_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

double gpd_draw(double u, double shape, double scale, double location) {
  if (std::abs(shape) < 1e-12) {
    return location - scale * std::log(u);
  }
  return location + scale / shape * (std::pow(u, -shape) - 1.0);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

void validate_spec(const FieldSpec& spec, std::size_t line) {
  if (spec.field_id.empty()) {
    throw ParseError(line, "", "field spec without an id");
  }
  if (spec.n < 1) {
    throw ParseError(line, "n", "field '" + spec.field_id + "': n must be >= 1");
  }
  if (spec.zero_share < 0 || spec.zero_share >= 1) {
    throw ParseError(line, "zero_share",
                     "field '" + spec.field_id + "': zero_share outside [0, 1)");
  }
  if (spec.gpd_scale <= 0) {
    throw ParseError(line, "sigma",
                     "field '" + spec.field_id + "': sigma must be positive");
  }
}

}  // namespace

std::vector<FieldSpec> load_field_specs(std::istream& in) {
  std::vector<FieldSpec> specs;
  FieldSpec current;
  bool open = false;
  std::size_t section_line = 0;
  std::string line;
  std::size_t line_number = 0;

  auto flush = [&] {
    if (open) {
      validate_spec(current, section_line);
      specs.push_back(std::move(current));
      current = {};
    }
  };

  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.resize(comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(line_number, "", "unterminated section header");
      }
      flush();
      open = true;
      section_line = line_number;
      current.field_id = unquote(trim(line.substr(1, line.size() - 2)));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos || !open) {
      throw ParseError(line_number, "", "expected 'key = value' inside a section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    try {
      if (key == "n") {
        current.n = static_cast<std::size_t>(std::stoull(value));
      } else if (key == "zero_share") {
        current.zero_share = std::stod(value);
      } else if (key == "k") {
        current.gpd_shape = std::stod(value);
      } else if (key == "sigma") {
        current.gpd_scale = std::stod(value);
      } else if (key == "mu") {
        current.gpd_location = std::stod(value);
      } else if (key == "rank_mix") {
        for (const auto& part : [&] {
               std::vector<std::string> parts;
               std::stringstream ss(value);
               std::string item;
               while (std::getline(ss, item, ';')) parts.push_back(item);
               return parts;
             }()) {
          const auto colon = part.find(':');
          if (colon == std::string::npos) {
            throw ParseError(line_number, "rank_mix",
                             "expected 'rank:weight' entries");
          }
          const auto rank = parse_rank(trim(part.substr(0, colon)));
          if (!rank) {
            throw ParseError(line_number, "rank_mix",
                             "unknown rank '" + trim(part.substr(0, colon)) + "'");
          }
          current.rank_mix[*rank] = std::stod(part.substr(colon + 1));
        }
      } else {
        throw ParseError(line_number, key, "unknown spec key");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError(line_number, key, "not a number: '" + value + "'");
    } catch (const std::out_of_range&) {
      throw ParseError(line_number, key, "value out of range: '" + value + "'");
    }
  }
  flush();
  return specs;
}

std::vector<ScoreSet> generate_population(const std::vector<FieldSpec>& specs,
                                          std::uint64_t seed) {
  for (std::size_t i = 0; i < specs.size(); ++i) validate_spec(specs[i], i + 1);

  std::vector<ScoreSet> population;
  population.reserve(specs.size());
  for (std::size_t index = 0; index < specs.size(); ++index) {
    const FieldSpec& spec = specs[index];
    // Keyed to the field id, not its position: a field's stream survives
    // reordering and parallel generation.
    std::mt19937_64 rng(splitmix64(seed ^ fnv1a(spec.field_id)));

    ScoreSet set;
    set.field_id = spec.field_id;
    set.kind = ScoreKind::kFssStar;
    const auto zeros = static_cast<std::size_t>(
        std::floor(spec.zero_share * static_cast<double>(spec.n)));
    for (std::size_t i = 0; i < spec.n; ++i) {
      double score = 0.0;
      if (i >= zeros) {
        const double draw = gpd_draw(next_uniform(rng), spec.gpd_shape,
                                     spec.gpd_scale, spec.gpd_location);
        score = std::max(0.0, draw);
      }
      set.entries.emplace_back(spec.field_id + ":" + std::to_string(i + 1),
                               score);
    }
    population.push_back(std::move(set));
  }
  return population;
}

namespace {

// Max over a pooled-quantile grid of the cross-field spread of log10 CCDF.
double ccdf_divergence(const std::vector<ScoreSet>& fields) {
  std::vector<double> pooled_positive;
  for (const auto& f : fields) {
    for (const auto& [id, score] : f.entries) {
      if (score > 0) pooled_positive.push_back(score);
    }
  }
  if (pooled_positive.size() < 2) return 0.0;

  constexpr int kGridPoints = 25;
  double divergence = 0.0;
  for (int g = 1; g <= kGridPoints; ++g) {
    const double q = static_cast<double>(g) / (kGridPoints + 1);
    const double x = quantile(pooled_positive, q);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int covered = 0;
    for (const auto& f : fields) {
      std::size_t at_least = 0;
      for (const auto& [id, score] : f.entries) {
        if (score >= x) ++at_least;
      }
      if (at_least == 0) continue;
      const double log_y = std::log10(static_cast<double>(at_least) /
                                      static_cast<double>(f.entries.size()));
      lo = std::min(lo, log_y);
      hi = std::max(hi, log_y);
      ++covered;
    }
    if (covered >= 2) divergence = std::max(divergence, hi - lo);
  }
  return divergence;
}

}  // namespace

std::vector<EvaluationResult> evaluate_scaling_factors(
    const std::vector<ScoreSet>& fields, const std::vector<double>& ps) {
  if (fields.size() < 2) {
    throw InvalidArgumentError("scaling evaluation requires at least 2 fields");
  }

  std::vector<EvaluationResult> results;
  for (auto kind : kAllFactorKinds) {
    EvaluationResult result;
    result.kind = kind;

    std::vector<ScoreSet> standardized;
    for (const auto& field : fields) {
      const auto stats = field_scaling_stats(field);
      const auto denom = stats.denominator(kind);
      if (!denom || *denom <= 0) {
        log::warn("field '" + field.field_id + "' skipped for " +
                  std::string(factor_label(kind)) +
                  ": zero or undefined denominator");
        result.skipped_fields.push_back(field.field_id);
        continue;
      }
      standardized.push_back(standardize(field, kind));
    }
    if (standardized.size() >= 2) {
      const auto ranking = pooled_ranking(standardized);
      for (double p : ps) {
        TopShareMetric metric;
        metric.p = p;
        for (const auto& share : top_share(ranking, p)) {
          metric.max_abs_deviation =
              std::max(metric.max_abs_deviation, std::abs(share.share - p));
          if (share.violation) ++metric.band_violations;
        }
        result.per_p.push_back(metric);
      }
      result.ccdf_divergence = ccdf_divergence(standardized);
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace crossfield
