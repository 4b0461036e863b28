// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the shared library exclusively through
// the C API in crossfield/crossfield.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crossfield/crossfield.h"

namespace {

int die(cf_status status) {
  std::fprintf(stderr, "error: %s\n", cf_last_error());
  return static_cast<int>(status);
}

struct TableCloser {
  void operator()(cf_score_table* t) const { cf_score_table_close(t); }
};
struct DatasetCloser {
  void operator()(cf_dataset* d) const { cf_dataset_close(d); }
};
using TablePtr = std::unique_ptr<cf_score_table, TableCloser>;
using DatasetPtr = std::unique_ptr<cf_dataset, DatasetCloser>;

cf_factor parse_factor_or_exit(const std::string& label) {
  if (label == "mean_all") return CF_FACTOR_MEAN_ALL;
  if (label == "mean_nonzero") return CF_FACTOR_MEAN_NONZERO;
  if (label == "median_all") return CF_FACTOR_MEDIAN_ALL;
  if (label == "median_nonzero") return CF_FACTOR_MEDIAN_NONZERO;
  std::fprintf(stderr, "error: unknown factor '%s'\n", label.c_str());
  std::exit(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Field-normalized research productivity (FSS/FSS*) toolkit"};
  app.require_subcommand(1);

  // score
  std::string researchers_path, publications_path, baselines_path;
  std::string stipend_path, scores_out = "scores.csv";
  auto* score = app.add_subcommand(
      "score", "Compute FSS and FSS* from roster and publication files");
  score->add_option("--researchers", researchers_path, "researchers.csv")
      ->required();
  score->add_option("--publications", publications_path, "publications.csv")
      ->required();
  score->add_option("--baselines", baselines_path,
                    "pre-computed baselines.csv (default: computed from the corpus)");
  score->add_option("--stipend-table", stipend_path,
                    "override for the built-in stipend coefficients");
  score->add_option("--out", scores_out, "output scores.csv path");

  // standardize
  std::string std_in, std_out = "standardized.csv", factor_label = "mean_nonzero";
  bool strict = false;
  auto* standardize = app.add_subcommand(
      "standardize", "Divide FSS* by a per-field scaling factor");
  standardize->add_option("scores", std_in, "input scores.csv")->required();
  standardize
      ->add_option("--factor", factor_label,
                   "mean_all|mean_nonzero|median_all|median_nonzero")
      ->capture_default_str();
  standardize->add_flag("--strict", strict,
                        "fail on zero-denominator fields instead of skipping");
  standardize->add_option("--out", std_out, "output path");

  // analyze
  std::string analyze_in, analyze_out = "report";
  std::vector<double> top_ps = {0.05, 0.10, 0.20};
  std::string band_n = "field";
  double mad_threshold = 5.0, ccdf_offset = 0.05;
  auto* analyze = app.add_subcommand(
      "analyze",
      "Descriptive stats, GPD fit + KS test, top shares, MAD outliers, CCDF data");
  analyze->add_option("scores", analyze_in, "scores.csv or standardized.csv")
      ->required();
  analyze->add_option("--top", top_ps, "top-share fractions")
      ->delimiter(',')
      ->capture_default_str();
  analyze
      ->add_option("--band-n", band_n,
                   "'field' for per-field bands, or a fixed reference size")
      ->capture_default_str();
  analyze->add_option("--mad-threshold", mad_threshold, "MAD outlier cutoff")
      ->capture_default_str();
  analyze->add_option("--offset", ccdf_offset, "CCDF x-axis offset")
      ->capture_default_str();
  analyze->add_option("--out", analyze_out, "output directory");

  // simulate
  std::string specs_path, sim_out = "simulation";
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic population and rank the scaling factors");
  simulate->add_option("specs", specs_path, "field spec file")->required();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_option("--top", top_ps, "top-share fractions")->delimiter(',');
  simulate->add_option("--out", sim_out, "output directory");

  // percentile
  std::string pct_in, pct_out = "percentile.csv";
  auto* percentile = app.add_subcommand(
      "percentile", "Within-field percentile ranks (the size-sensitive baseline)");
  percentile->add_option("scores", pct_in, "input scores.csv")->required();
  percentile->add_option("--out", pct_out, "output path");

  CLI11_PARSE(app, argc, argv);

  cf_analyze_opts opts{};
  opts.top_ps = top_ps.data();
  opts.top_ps_len = top_ps.size();
  opts.fixed_band_n = band_n == "field" ? 0 : std::strtoull(band_n.c_str(), nullptr, 10);
  opts.mad_threshold = mad_threshold;
  opts.ccdf_offset = ccdf_offset;

  if (score->parsed()) {
    cf_dataset* dataset = nullptr;
    cf_status status = cf_dataset_open(
        researchers_path.c_str(), publications_path.c_str(),
        baselines_path.empty() ? nullptr : baselines_path.c_str(),
        stipend_path.empty() ? nullptr : stipend_path.c_str(), &dataset);
    if (status != CF_OK) return die(status);
    DatasetPtr dataset_guard(dataset);

    cf_score_table* table = nullptr;
    status = cf_compute_scores(dataset, &table);
    if (status != CF_OK) return die(status);
    TablePtr table_guard(table);
    status = cf_score_table_write(table, scores_out.c_str());
    if (status != CF_OK) return die(status);
    std::printf("wrote %s\n", scores_out.c_str());
    return 0;
  }

  if (standardize->parsed()) {
    cf_score_table* table = nullptr;
    cf_status status = cf_score_table_open(std_in.c_str(), &table);
    if (status != CF_OK) return die(status);
    TablePtr table_guard(table);

    cf_score_table* result = nullptr;
    status = cf_standardize(table, parse_factor_or_exit(factor_label),
                            strict ? 1 : 0, &result);
    if (status != CF_OK) return die(status);
    TablePtr result_guard(result);
    status = cf_score_table_write(result, std_out.c_str());
    if (status != CF_OK) return die(status);
    std::printf("wrote %s\n", std_out.c_str());
    return 0;
  }

  if (analyze->parsed()) {
    cf_score_table* table = nullptr;
    cf_status status = cf_score_table_open(analyze_in.c_str(), &table);
    if (status != CF_OK) return die(status);
    TablePtr table_guard(table);
    status = cf_analyze(table, &opts, analyze_out.c_str());
    if (status != CF_OK) return die(status);
    std::printf("wrote report bundle to %s/\n", analyze_out.c_str());
    return 0;
  }

  if (simulate->parsed()) {
    const cf_status status =
        cf_simulate(specs_path.c_str(), seed, &opts, sim_out.c_str());
    if (status != CF_OK) return die(status);
    std::printf("wrote simulation bundle to %s/\n", sim_out.c_str());
    return 0;
  }

  if (percentile->parsed()) {
    cf_score_table* table = nullptr;
    cf_status status = cf_score_table_open(pct_in.c_str(), &table);
    if (status != CF_OK) return die(status);
    TablePtr table_guard(table);
    status = cf_percentile(table, pct_out.c_str());
    if (status != CF_OK) return die(status);
    std::printf("wrote %s\n", pct_out.c_str());
    return 0;
  }

  return 0;
}
