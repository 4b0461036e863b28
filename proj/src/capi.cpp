// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/crossfield.h"

#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "crossfield/analysis.hpp"
#include "crossfield/errors.hpp"
#include "crossfield/ingest.hpp"
#include "crossfield/model.hpp"
#include "crossfield/report.hpp"
#include "crossfield/synth.hpp"

namespace {

thread_local std::string g_last_error = "no error";

cf_status fail(cf_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

cf_status translate(const std::exception& e) {
  using namespace crossfield;
  if (dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const DuplicateKeyError*>(&e)) {
    return fail(CF_ERR_PARSE, e.what());
  }
  if (dynamic_cast<const MissingBaselineError*>(&e)) {
    return fail(CF_ERR_MISSING_BASELINE, e.what());
  }
  if (dynamic_cast<const ZeroDenominatorError*>(&e)) {
    return fail(CF_ERR_ZERO_DENOMINATOR, e.what());
  }
  if (dynamic_cast<const DegenerateError*>(&e)) {
    return fail(CF_ERR_DEGENERATE, e.what());
  }
  if (dynamic_cast<const FitError*>(&e)) {
    return fail(CF_ERR_FIT, e.what());
  }
  if (dynamic_cast<const InvalidArgumentError*>(&e)) {
    return fail(CF_ERR_INVALID_ARGUMENT, e.what());
  }
  if (dynamic_cast<const crossfield::Error*>(&e)) {
    return fail(CF_ERR_VALIDATION, e.what());
  }
  return fail(CF_ERR_INTERNAL, e.what());
}

std::ifstream open_input(const char* path) {
  std::ifstream in(path);
  if (!in) throw crossfield::Error(std::string("cannot open file: ") + path);
  return in;
}

// FNV-1a over the file bytes, recorded as provenance.
std::string digest(const char* path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t hash = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(path) + ":" + buffer;
}

crossfield::AnalyzeOptions to_options(const cf_analyze_opts* opts) {
  crossfield::AnalyzeOptions options;
  if (!opts) return options;
  if (opts->top_ps && opts->top_ps_len > 0) {
    options.top_ps.assign(opts->top_ps, opts->top_ps + opts->top_ps_len);
  }
  if (opts->fixed_band_n > 0) options.fixed_band_n = opts->fixed_band_n;
  if (opts->mad_threshold > 0) options.mad_threshold = opts->mad_threshold;
  if (opts->ccdf_offset >= 0) options.ccdf_offset = opts->ccdf_offset;
  return options;
}

}  // namespace

struct cf_dataset {
  crossfield::Dataset dataset;
  crossfield::StipendTable stipends = crossfield::StipendTable::builtin();
  std::string report_buffer;
};

struct cf_score_table {
  crossfield::ScoreTable table;
};

extern "C" {

const char* cf_last_error(void) { return g_last_error.c_str(); }

double cf_stipend_coefficient(cf_rank rank) {
  return crossfield::stipend_coefficient(
      static_cast<crossfield::AcademicRank>(rank));
}

double cf_ks_critical_value_5pct(size_t n) {
  return crossfield::ks_critical_value_5pct(n);
}

cf_status cf_dataset_open(const char* researchers_csv,
                          const char* publications_csv,
                          const char* baselines_csv, const char* stipend_csv,
                          cf_dataset** out) {
  if (!researchers_csv || !publications_csv || !out) {
    return fail(CF_ERR_INVALID_ARGUMENT, "null argument to cf_dataset_open");
  }
  try {
    auto handle = std::make_unique<cf_dataset>();
    {
      auto in = open_input(researchers_csv);
      handle->dataset.researchers = crossfield::load_researchers(in);
      handle->dataset.provenance.push_back(digest(researchers_csv));
    }
    {
      auto in = open_input(publications_csv);
      handle->dataset.publications = crossfield::load_publications(in);
      handle->dataset.provenance.push_back(digest(publications_csv));
    }
    if (baselines_csv) {
      auto in = open_input(baselines_csv);
      handle->dataset.baselines = crossfield::load_baselines(in);
      handle->dataset.provenance.push_back(digest(baselines_csv));
    }
    if (stipend_csv) {
      auto in = open_input(stipend_csv);
      handle->stipends = crossfield::StipendTable::load(in);
    }
    *out = handle.release();
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void cf_dataset_close(cf_dataset* dataset) { delete dataset; }

cf_status cf_dataset_validation_report(cf_dataset* dataset,
                                       const char** report) {
  if (!dataset || !report) {
    return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto result = crossfield::validate_roster(
      dataset->dataset.researchers, dataset->dataset.publications);
  std::ostringstream text;
  for (const auto& issue : result.issues) text << issue.message << '\n';
  dataset->report_buffer = text.str();
  *report = dataset->report_buffer.c_str();
  return CF_OK;
}

cf_status cf_compute_scores(const cf_dataset* dataset, cf_score_table** out) {
  if (!dataset || !out) return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  try {
    auto handle = std::make_unique<cf_score_table>();
    handle->table =
        crossfield::compute_scores(dataset->dataset, dataset->stipends);
    *out = handle.release();
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

cf_status cf_score_table_open(const char* scores_csv, cf_score_table** out) {
  if (!scores_csv || !out) return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  try {
    auto in = open_input(scores_csv);
    auto handle = std::make_unique<cf_score_table>();
    handle->table = crossfield::load_score_table(in);
    *out = handle.release();
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

cf_status cf_score_table_write(const cf_score_table* table, const char* path) {
  if (!table || !path) return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  try {
    std::ofstream out(path);
    if (!out) throw crossfield::Error(std::string("cannot open file: ") + path);
    crossfield::write_score_table(table->table, out);
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void cf_score_table_close(cf_score_table* table) { delete table; }

cf_status cf_standardize(const cf_score_table* table, cf_factor factor,
                         int strict, cf_score_table** out) {
  if (!table || !out) return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  try {
    auto handle = std::make_unique<cf_score_table>();
    handle->table = crossfield::standardize_table(
        table->table, static_cast<crossfield::ScalingFactorKind>(factor),
        strict != 0, nullptr);
    *out = handle.release();
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

cf_status cf_analyze(const cf_score_table* table, const cf_analyze_opts* opts,
                     const char* out_dir) {
  if (!table || !out_dir) return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  try {
    crossfield::run_analysis(table->table, to_options(opts), out_dir);
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

cf_status cf_simulate(const char* specs_path, uint64_t seed,
                      const cf_analyze_opts* opts, const char* out_dir) {
  if (!specs_path || !out_dir) {
    return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  }
  try {
    auto in = open_input(specs_path);
    const auto specs = crossfield::load_field_specs(in);
    crossfield::run_simulation(specs, seed, to_options(opts), out_dir);
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

cf_status cf_percentile(const cf_score_table* table, const char* path) {
  if (!table || !path) return fail(CF_ERR_INVALID_ARGUMENT, "null argument");
  try {
    std::ofstream out(path);
    if (!out) throw crossfield::Error(std::string("cannot open file: ") + path);
    crossfield::write_percentile_ranks(table->table, out);
    return CF_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

}  // extern "C"
