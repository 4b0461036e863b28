// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "crossfield/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "crossfield/analysis.hpp"
#include "crossfield/csv.hpp"
#include "crossfield/errors.hpp"
#include "crossfield/indicator.hpp"
#include "crossfield/log.hpp"

namespace crossfield {

namespace {

std::string fmt(double value, const char* spec) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, value);
  return buffer;
}

// Three decimals in table files, round-trippable precision elsewhere.
std::string fmt3(double value) { return fmt(value, "%.3f"); }
std::string fmtg(double value) { return fmt(value, "%.12g"); }
std::string fmt_full(double value) { return fmt(value, "%.17g"); }

std::string sanitize_filename(const std::string& field_id) {
  std::string out = field_id;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') {
      c = '_';
    }
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path.string());
  return out;
}

}  // namespace

bool ScoreTable::standardized() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(),
                     [](const ScoreRow& r) { return r.fss_star_std.has_value(); });
}

std::vector<ScoreSet> ScoreTable::by_field() const {
  const bool use_std = standardized();
  std::map<std::string, std::size_t> index;
  std::vector<ScoreSet> fields;
  for (const auto& row : rows) {
    auto [it, inserted] = index.try_emplace(row.field_id, fields.size());
    if (inserted) {
      fields.push_back({row.field_id,
                        {},
                        use_std ? ScoreKind::kStandardized : ScoreKind::kFssStar});
    }
    fields[it->second].entries.emplace_back(
        row.researcher_id, use_std ? *row.fss_star_std : row.fss_star);
  }
  return fields;
}

ScoreTable load_score_table(std::istream& in) {
  csv::Reader reader(in);
  reader.require_columns({"researcher", "field", "fss_star"});
  const bool has_rank = reader.has_column("rank");
  const bool has_t = reader.has_column("t");
  const bool has_fss = reader.has_column("fss");
  const bool has_std = reader.has_column("fss_star_std");

  ScoreTable table;
  while (reader.next()) {
    ScoreRow row;
    row.researcher_id = reader.field("researcher");
    row.field_id = reader.field("field");
    if (has_rank) row.rank_label = reader.field("rank");
    if (has_t && !reader.field("t").empty()) row.years_active = reader.number("t");
    if (has_fss && !reader.field("fss").empty()) row.fss = reader.number("fss");
    row.fss_star = reader.number("fss_star");
    if (row.fss_star < 0) {
      throw ParseError(reader.row_number(), "fss_star",
                       "scores must be nonnegative");
    }
    if (has_std && !reader.field("fss_star_std").empty()) {
      row.fss_star_std = reader.number("fss_star_std");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_score_table(const ScoreTable& table, std::ostream& out) {
  const bool with_std =
      std::any_of(table.rows.begin(), table.rows.end(),
                  [](const ScoreRow& r) { return r.fss_star_std.has_value(); });
  out << "researcher,field,rank,t,fss,fss_star";
  if (with_std) out << ",fss_star_std";
  out << '\n';
  for (const auto& row : table.rows) {
    std::vector<std::string> fields = {
        row.researcher_id,
        row.field_id,
        row.rank_label,
        row.years_active ? fmtg(*row.years_active) : "",
        row.fss ? fmtg(*row.fss) : "",
        fmtg(row.fss_star),
    };
    if (with_std) {
      fields.push_back(row.fss_star_std ? fmtg(*row.fss_star_std) : "");
    }
    out << csv::join_row(fields) << '\n';
  }
}

ScoreTable compute_scores(const Dataset& dataset, const StipendTable& stipends) {
  const auto report = validate_roster(dataset.researchers, dataset.publications);
  if (!report.ok()) {
    std::string message = "roster validation failed:";
    for (const auto& issue : report.issues) message += "\n  " + issue.message;
    throw Error(message);
  }

  CitationBaseline baselines = dataset.baselines;
  if (baselines.cells().empty() && !dataset.publications.empty()) {
    baselines = compute_baselines(dataset.publications);
  }

  ScoreTable table;
  table.rows.reserve(dataset.researchers.size());
  for (const auto& r : dataset.researchers) {
    ScoreRow row;
    row.researcher_id = r.id;
    row.field_id = r.field_id;
    row.rank_label = std::string(rank_label(r.rank));
    row.years_active = r.years_active;
    const double value = fss(r, dataset.publications, baselines);
    row.fss = value;
    row.fss_star = fss_star(value, r.rank, stipends);
    table.rows.push_back(std::move(row));
  }
  return table;
}

ScoreTable standardize_table(const ScoreTable& table, ScalingFactorKind kind,
                             bool strict, std::vector<std::string>* skipped) {
  std::map<std::string, double> denominators;
  std::set<std::string> dropped;
  for (const auto& field : table.by_field()) {
    const auto stats = field_scaling_stats(field);
    const auto denom = stats.denominator(kind);
    if (!denom || *denom <= 0) {
      if (strict) {
        throw ZeroDenominatorError("field '" + field.field_id + "': " +
                                   std::string(factor_label(kind)) +
                                   " denominator is zero or undefined");
      }
      log::warn("field '" + field.field_id + "' skipped for " +
                std::string(factor_label(kind)) +
                ": zero or undefined denominator");
      dropped.insert(field.field_id);
      if (skipped) skipped->push_back(field.field_id);
      continue;
    }
    denominators[field.field_id] = *denom;
  }

  ScoreTable out;
  for (const auto& row : table.rows) {
    if (dropped.contains(row.field_id)) continue;
    ScoreRow copy = row;
    copy.fss_star_std = row.fss_star / denominators.at(row.field_id);
    out.rows.push_back(std::move(copy));
  }
  return out;
}

namespace {

AnalyzeOptions normalized(const AnalyzeOptions& options) {
  AnalyzeOptions out = options;
  for (double p : out.top_ps) {
    if (!(p > 0 && p < 1)) {
      throw InvalidArgumentError("top-share p values must lie in (0, 1)");
    }
  }
  return out;
}

}  // namespace

void run_analysis(const ScoreTable& table, const AnalyzeOptions& raw_options,
                  const std::filesystem::path& out_dir) {
  const AnalyzeOptions options = normalized(raw_options);
  if (table.rows.empty()) throw InvalidArgumentError("empty score table");
  std::filesystem::create_directories(out_dir);
  std::filesystem::create_directories(out_dir / "ccdf");

  const auto fields = table.by_field();
  nlohmann::json summary;
  summary["fields"] = fields.size();
  summary["researchers"] = table.rows.size();
  summary["standardized_input"] = table.standardized();
  summary["errors"] = nlohmann::json::array();

  // descriptive.csv
  {
    auto out = open_output(out_dir / "descriptive.csv");
    out << "field,n,pct_zero,mean,coeff_variation,median,iqr,skewness,"
           "degenerate,error\n";
    for (const auto& field : fields) {
      try {
        const auto s = descriptive_stats(field);
        out << csv::join_row({s.field_id, std::to_string(s.n),
                              fmt3(s.pct_zero), fmt3(s.mean),
                              fmt3(s.coeff_variation), fmt3(s.median),
                              fmt3(s.iqr), fmt3(s.skewness),
                              s.degenerate ? "true" : "false", ""})
            << '\n';
      } catch (const Error& e) {
        out << csv::join_row({field.field_id,
                              std::to_string(field.entries.size()), "", "", "",
                              "", "", "", "", e.what()})
            << '\n';
        summary["errors"].push_back(e.what());
      }
    }
  }

  // gpd_fit.csv
  {
    auto out = open_output(out_dir / "gpd_fit.csv");
    out << "field,n,k,sigma,mu,log_likelihood,ks_statistic,"
           "critical_value_5pct,reject,error\n";
    for (const auto& field : fields) {
      std::vector<double> values;
      values.reserve(field.entries.size());
      for (const auto& [id, score] : field.entries) values.push_back(score);
      try {
        const auto fit = fit_gpd(values);
        const auto ks = ks_test(values, fit);
        out << csv::join_row(
                   {field.field_id, std::to_string(values.size()),
                    fmt3(fit.shape), fmt3(fit.scale), fmt3(fit.location),
                    fmt3(fit.log_likelihood), fmt3(ks.statistic),
                    fmt3(ks.critical_value_5pct), ks.reject ? "true" : "false",
                    ""})
            << '\n';
      } catch (const Error& e) {
        out << csv::join_row({field.field_id, std::to_string(values.size()),
                              "", "", "", "", "", "", "", e.what()})
            << '\n';
        summary["errors"].push_back(e.what());
      }
    }
  }

  // top_share.csv: one block per p over the pooled ranking.
  {
    const auto ranking = pooled_ranking(fields);
    auto out = open_output(out_dir / "top_share.csv");
    out << "p,field,field_size,marked,share_pct,band_low_pct,band_high_pct,"
           "violation\n";
    for (double p : options.top_ps) {
      for (const auto& share : top_share(ranking, p, options.fixed_band_n)) {
        out << csv::join_row({fmtg(p), share.field_id,
                              std::to_string(share.field_size),
                              std::to_string(share.marked),
                              fmt3(100.0 * share.share),
                              fmt3(100.0 * share.band_low),
                              fmt3(100.0 * share.band_high),
                              share.violation ? "true" : "false"})
            << '\n';
      }
    }
  }

  // outliers.csv over the pooled nonzero distribution.
  {
    std::vector<PooledScore> pooled;
    std::map<std::string, std::size_t> field_sizes;
    for (const auto& field : fields) {
      field_sizes[field.field_id] = field.entries.size();
      for (const auto& [id, score] : field.entries) {
        if (score > 0) pooled.push_back({id, field.field_id, score});
      }
    }
    auto out = open_output(out_dir / "outliers.csv");
    out << "field,n,nonzero,flagged,incidence_pct,error\n";
    try {
      const auto mad = mad_outliers(pooled, options.mad_threshold);
      std::size_t total_flagged = 0;
      for (const auto& f : mad.per_field) {
        total_flagged += f.flagged;
        out << csv::join_row({f.field_id,
                              std::to_string(field_sizes.at(f.field_id)),
                              std::to_string(f.nonzero_size),
                              std::to_string(f.flagged),
                              fmt3(100.0 * f.incidence), ""})
            << '\n';
      }
      summary["outliers"] = {{"pooled_nonzero", pooled.size()},
                             {"flagged", total_flagged},
                             {"median", mad.median},
                             {"mad", mad.mad}};
    } catch (const Error& e) {
      out << csv::join_row({"", "", "", "", "", e.what()}) << '\n';
      summary["errors"].push_back(e.what());
    }
  }

  // ccdf/<field>.csv, full precision for downstream log-log plotting.
  for (const auto& field : fields) {
    auto out =
        open_output(out_dir / "ccdf" / (sanitize_filename(field.field_id) + ".csv"));
    out << "x,ccdf\n";
    for (const auto& point : ccdf_series(field, options.ccdf_offset)) {
      out << fmt_full(point.x) << ',' << fmt_full(point.y) << '\n';
    }
  }

  summary["options"] = {{"top_ps", options.top_ps},
                        {"band_n", options.fixed_band_n
                                       ? nlohmann::json(*options.fixed_band_n)
                                       : nlohmann::json("field")},
                        {"mad_threshold", options.mad_threshold},
                        {"ccdf_offset", options.ccdf_offset}};
  open_output(out_dir / "summary.json") << summary.dump(2) << '\n';
}

void run_simulation(const std::vector<FieldSpec>& specs, std::uint64_t seed,
                    const AnalyzeOptions& raw_options,
                    const std::filesystem::path& out_dir) {
  const AnalyzeOptions options = normalized(raw_options);
  if (specs.empty()) throw InvalidArgumentError("no field specs supplied");
  std::filesystem::create_directories(out_dir);

  const auto population = generate_population(specs, seed);

  ScoreTable scores;
  for (const auto& field : population) {
    for (const auto& [id, score] : field.entries) {
      ScoreRow row;
      row.researcher_id = id;
      row.field_id = field.field_id;
      row.fss_star = score;
      scores.rows.push_back(std::move(row));
    }
  }
  {
    auto out = open_output(out_dir / "scores.csv");
    write_score_table(scores, out);
  }

  for (auto kind : kAllFactorKinds) {
    std::vector<std::string> skipped;
    const auto standardized =
        standardize_table(scores, kind, /*strict=*/false, &skipped);
    auto out = open_output(
        out_dir / ("standardized_" + std::string(factor_label(kind)) + ".csv"));
    write_score_table(standardized, out);
  }

  const auto evaluation = evaluate_scaling_factors(population, options.top_ps);

  // Rank the factors: fewest band violations first, CCDF spread breaks ties.
  std::vector<std::size_t> order(evaluation.size());
  std::iota(order.begin(), order.end(), 0);
  auto total_violations = [&](std::size_t i) {
    std::size_t total = 0;
    for (const auto& m : evaluation[i].per_p) total += m.band_violations;
    return total;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto va = total_violations(a);
    const auto vb = total_violations(b);
    if (va != vb) return va < vb;
    return evaluation[a].ccdf_divergence < evaluation[b].ccdf_divergence;
  });

  nlohmann::json summary;
  summary["seed"] = seed;
  summary["fields"] = specs.size();
  summary["factors"] = nlohmann::json::array();
  {
    auto out = open_output(out_dir / "evaluation.csv");
    out << "rank,factor,p,max_abs_deviation,band_violations,ccdf_divergence,"
           "skipped_fields\n";
    for (std::size_t position = 0; position < order.size(); ++position) {
      const auto& result = evaluation[order[position]];
      std::string skipped;
      for (const auto& field : result.skipped_fields) {
        if (!skipped.empty()) skipped += ';';
        skipped += field;
      }
      for (const auto& metric : result.per_p) {
        out << csv::join_row({std::to_string(position + 1),
                              std::string(factor_label(result.kind)),
                              fmtg(metric.p), fmt3(metric.max_abs_deviation),
                              std::to_string(metric.band_violations),
                              fmt3(result.ccdf_divergence), skipped})
            << '\n';
      }
      nlohmann::json entry;
      entry["factor"] = std::string(factor_label(result.kind));
      entry["rank"] = position + 1;
      entry["ccdf_divergence"] = result.ccdf_divergence;
      entry["total_band_violations"] = total_violations(order[position]);
      summary["factors"].push_back(entry);
    }
  }
  open_output(out_dir / "summary.json") << summary.dump(2) << '\n';
}

void write_percentile_ranks(const ScoreTable& table, std::ostream& out) {
  out << "researcher,field,score,percentile_rank\n";
  for (const auto& field : table.by_field()) {
    for (const auto& [id, score] : field.entries) {
      out << csv::join_row({id, field.field_id, fmtg(score),
                            fmt3(percentile_rank(field.entries, id))})
          << '\n';
    }
  }
}

}  // namespace crossfield
