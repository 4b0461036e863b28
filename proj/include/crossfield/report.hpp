// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_REPORT_HPP
#define CROSSFIELD_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "crossfield/ingest.hpp"
#include "crossfield/scaling.hpp"
#include "crossfield/synth.hpp"

namespace crossfield {

// One row of scores.csv / standardized.csv. Loaders require at least the
// researcher, field and fss_star columns; the rest are optional so synthetic
// tables round-trip through the same schema.
struct ScoreRow {
  std::string researcher_id;
  std::string field_id;
  std::string rank_label;
  std::optional<double> years_active;
  std::optional<double> fss;
  double fss_star = 0;
  std::optional<double> fss_star_std;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;

  // Groups rows by field, preserving first-seen field order. Uses
  // fss_star_std when every row carries it, fss_star otherwise.
  std::vector<ScoreSet> by_field() const;
  bool standardized() const;
};

ScoreTable load_score_table(std::istream& in);
void write_score_table(const ScoreTable& table, std::ostream& out);

// Full scoring pipeline: validates the roster, computes baselines from the
// corpus when the dataset carries none, and evaluates FSS and FSS* for every
// researcher. Throws on validation or missing-baseline failures.
ScoreTable compute_scores(const Dataset& dataset,
                          const StipendTable& stipends = StipendTable::builtin());

// Adds the fss_star_std column. Fields with a zero/undefined denominator are
// listed in `skipped` and dropped, unless `strict` (then ZeroDenominatorError).
ScoreTable standardize_table(const ScoreTable& table, ScalingFactorKind kind,
                             bool strict, std::vector<std::string>* skipped);

struct AnalyzeOptions {
  std::vector<double> top_ps = {0.05, 0.10, 0.20};
  std::optional<std::size_t> fixed_band_n;  // default: per-field bands
  double mad_threshold = 5.0;
  double ccdf_offset = 0.05;
};

// Writes the report bundle into out_dir: descriptive.csv, gpd_fit.csv,
// top_share.csv, outliers.csv, ccdf/<field>.csv and summary.json. Per-field
// failures become error rows; other fields are never aborted.
void run_analysis(const ScoreTable& table, const AnalyzeOptions& options,
                  const std::filesystem::path& out_dir);

// Generates the synthetic population, emits scores.csv plus one
// standardized_<factor>.csv per kind, and evaluation.csv ranking the four
// factors by band violations then CCDF spread.
void run_simulation(const std::vector<FieldSpec>& specs, std::uint64_t seed,
                    const AnalyzeOptions& options,
                    const std::filesystem::path& out_dir);

// percentile.csv: within-field percentile rank per researcher.
void write_percentile_ranks(const ScoreTable& table, std::ostream& out);

}  // namespace crossfield

#endif  // CROSSFIELD_REPORT_HPP
