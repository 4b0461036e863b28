/* Copyright 2026 The crossfield Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API for the crossfield shared library. All functions returning cf_status
 * set a thread-local error message retrievable via cf_last_error() on
 * failure. Handles are opaque and must be released with their _close call.
 */

#ifndef CROSSFIELD_CROSSFIELD_H
#define CROSSFIELD_CROSSFIELD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CF_API __declspec(dllexport)
#else
#define CF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERR_PARSE = 1,
  CF_ERR_VALIDATION = 2,
  CF_ERR_MISSING_BASELINE = 3,
  CF_ERR_ZERO_DENOMINATOR = 4,
  CF_ERR_DEGENERATE = 5,
  CF_ERR_FIT = 6,
  CF_ERR_INVALID_ARGUMENT = 7,
  CF_ERR_IO = 8,
  CF_ERR_INTERNAL = 9
} cf_status;

typedef enum cf_rank {
  CF_RANK_FULL_CONFIRMED = 0,
  CF_RANK_FULL_PROBATIONARY = 1,
  CF_RANK_ASSOCIATE_CONFIRMED = 2,
  CF_RANK_ASSOCIATE_PROBATIONARY = 3,
  CF_RANK_ASSISTANT_CONFIRMED = 4,
  CF_RANK_ASSISTANT_PROBATIONARY = 5,
  CF_RANK_RESEARCH_ASSISTANT = 6
} cf_rank;

typedef enum cf_factor {
  CF_FACTOR_MEAN_ALL = 0,
  CF_FACTOR_MEAN_NONZERO = 1,
  CF_FACTOR_MEDIAN_ALL = 2,
  CF_FACTOR_MEDIAN_NONZERO = 3
} cf_factor;

/* Message for the most recent failing call on this thread; never NULL. */
CF_API const char* cf_last_error(void);

/* ---- scalar helpers -------------------------------------------------- */

/* Built-in stipend coefficient for a rank. */
CF_API double cf_stipend_coefficient(cf_rank rank);

/* 5% Kolmogorov-Smirnov critical value, 1.358 / sqrt(n). */
CF_API double cf_ks_critical_value_5pct(size_t n);

/* ---- dataset --------------------------------------------------------- */

typedef struct cf_dataset cf_dataset;

/* baselines_csv and stipend_csv may be NULL: baselines are then computed
 * from the publication corpus and the built-in stipend table is used. */
CF_API cf_status cf_dataset_open(const char* researchers_csv,
                                 const char* publications_csv,
                                 const char* baselines_csv,
                                 const char* stipend_csv,
                                 cf_dataset** out);
CF_API void cf_dataset_close(cf_dataset* dataset);

/* Roster validation report, one issue per line; empty string when clean.
 * The returned buffer is owned by the dataset handle. */
CF_API cf_status cf_dataset_validation_report(cf_dataset* dataset,
                                              const char** report);

/* ---- score tables ---------------------------------------------------- */

typedef struct cf_score_table cf_score_table;

CF_API cf_status cf_compute_scores(const cf_dataset* dataset,
                                   cf_score_table** out);
CF_API cf_status cf_score_table_open(const char* scores_csv,
                                     cf_score_table** out);
CF_API cf_status cf_score_table_write(const cf_score_table* table,
                                      const char* path);
CF_API void cf_score_table_close(cf_score_table* table);

/* Adds the standardized column. With strict == 0, fields whose denominator
 * is zero or undefined are dropped with a warning on the log; with
 * strict != 0 such a field fails the call. */
CF_API cf_status cf_standardize(const cf_score_table* table, cf_factor factor,
                                int strict, cf_score_table** out);

/* ---- analysis / simulation ------------------------------------------- */

typedef struct cf_analyze_opts {
  const double* top_ps;   /* NULL -> {0.05, 0.10, 0.20} */
  size_t top_ps_len;
  size_t fixed_band_n;    /* 0 -> per-field bands */
  double mad_threshold;   /* <= 0 -> 5.0 */
  double ccdf_offset;     /* < 0 -> 0.05 */
} cf_analyze_opts;

/* Writes descriptive.csv, gpd_fit.csv, top_share.csv, outliers.csv,
 * ccdf/<field>.csv and summary.json into out_dir. */
CF_API cf_status cf_analyze(const cf_score_table* table,
                            const cf_analyze_opts* opts, const char* out_dir);

/* Generates a synthetic population from a spec file and writes the per-factor
 * standardized tables plus evaluation.csv into out_dir. */
CF_API cf_status cf_simulate(const char* specs_path, uint64_t seed,
                             const cf_analyze_opts* opts, const char* out_dir);

/* percentile.csv with within-field percentile ranks. */
CF_API cf_status cf_percentile(const cf_score_table* table, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CROSSFIELD_CROSSFIELD_H */
