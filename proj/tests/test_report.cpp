// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "crossfield/errors.hpp"
#include "crossfield/report.hpp"

using namespace crossfield;

namespace {

Dataset worked_fixture() {
  Dataset dataset;
  dataset.researchers = {{"r1", "MAT/05", "AREA01",
                          AcademicRank::kAssistantProbationary, 5.0, "uniA"}};
  Publication p;
  p.id = "p1";
  p.year = 2005;
  p.subject_categories = {"SC1"};
  p.citations = 4;
  p.convention = BylineConvention::kAlphabetical;
  p.byline = {{"r1", 1, "uniA"}, {"ext:other", 2, "uniB"}};
  dataset.publications = {p};
  dataset.baselines.set(2005, "SC1", 2.0);
  return dataset;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("crossfield_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::size_t line_count(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

}  // namespace

TEST_CASE("compute_scores on the worked fixture") {
  const auto table = compute_scores(worked_fixture());
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].fss.value() == doctest::Approx(0.2));
  CHECK(table.rows[0].fss_star == doctest::Approx(0.2));
  CHECK(table.rows[0].rank_label == "assistant_probationary");
}

TEST_CASE("compute_scores: full-confirmed quotient") {
  auto dataset = worked_fixture();
  dataset.researchers[0].rank = AcademicRank::kFullConfirmed;
  dataset.researchers[0].years_active = 5.0 * 0.2 / 0.2783;  // forces fss 0.2783
  const auto table = compute_scores(dataset);
  CHECK(table.rows[0].fss.value() == doctest::Approx(0.2783));
  CHECK(table.rows[0].fss_star == doctest::Approx(0.1));
}

TEST_CASE("compute_scores: empty publications give all-zero fss") {
  auto dataset = worked_fixture();
  dataset.publications.clear();
  const auto table = compute_scores(dataset);
  CHECK(table.rows[0].fss.value() == 0.0);
  CHECK(table.rows[0].fss_star == 0.0);
}

TEST_CASE("compute_scores: baselines computed from the corpus when absent") {
  auto dataset = worked_fixture();
  dataset.baselines = {};
  // Only cited publication is p1 itself, so cbar = 4 and fss = (1/5)*1*0.5.
  const auto table = compute_scores(dataset);
  CHECK(table.rows[0].fss.value() == doctest::Approx(0.1));
}

TEST_CASE("compute_scores rejects an inconsistent roster") {
  auto dataset = worked_fixture();
  dataset.publications[0].byline[0].author_ref = "ghost";
  CHECK_THROWS_AS(compute_scores(dataset), Error);
}

TEST_CASE("score table round-trips at printed precision") {
  std::mt19937 rng(43);
  ScoreTable table;
  for (int i = 0; i < 50; ++i) {
    ScoreRow row;
    row.researcher_id = "r" + std::to_string(i);
    row.field_id = "F" + std::to_string(i % 3);
    row.rank_label = "assistant_probationary";
    row.years_active = 1.0 + (rng() % 8) * 0.5;
    row.fss = (rng() % 1000) / 977.0;
    row.fss_star = *row.fss;
    if (i % 2 == 0) row.fss_star_std = *row.fss / 0.3;
    table.rows.push_back(row);
  }
  std::ostringstream out;
  write_score_table(table, out);
  std::istringstream in(out.str());
  const auto loaded = load_score_table(in);
  std::ostringstream again;
  write_score_table(loaded, again);
  CHECK(out.str() == again.str());
}

TEST_CASE("standardize_table skips or fails zero-denominator fields") {
  ScoreTable table;
  for (int i = 0; i < 4; ++i) {
    ScoreRow row;
    row.researcher_id = "a" + std::to_string(i);
    row.field_id = "GOOD";
    row.fss_star = static_cast<double>(i);  // {0,1,2,3}
    table.rows.push_back(row);
  }
  for (int i = 0; i < 4; ++i) {
    ScoreRow row;
    row.researcher_id = "b" + std::to_string(i);
    row.field_id = "NILMEDIAN";
    row.fss_star = i == 3 ? 1.0 : 0.0;  // {0,0,0,1}
    table.rows.push_back(row);
  }

  std::vector<std::string> skipped;
  const auto result = standardize_table(table, ScalingFactorKind::kMedianAll,
                                        /*strict=*/false, &skipped);
  CHECK(skipped == std::vector<std::string>{"NILMEDIAN"});
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows[1].fss_star_std.value() == doctest::Approx(1.0 / 1.5));
  CHECK(result.rows[3].fss_star_std.value() == doctest::Approx(2.0));

  CHECK_THROWS_AS(
      standardize_table(table, ScalingFactorKind::kMedianAll, true, nullptr),
      ZeroDenominatorError);
}

TEST_CASE("run_analysis writes the full bundle") {
  const auto dir = temp_dir("analysis");
  const std::vector<FieldSpec> specs = {
      {"A", 120, 0.10, 0.35, 0.15, 0.0, {}},
      {"B", 80, 0.25, 0.45, 0.06, -0.01, {}},
      {"C", 40, 0.05, 0.30, 0.20, 0.0, {}},
  };
  ScoreTable table;
  for (const auto& field : generate_population(specs, 4)) {
    for (const auto& [id, score] : field.entries) {
      ScoreRow row;
      row.researcher_id = id;
      row.field_id = field.field_id;
      row.fss_star = score;
      table.rows.push_back(row);
    }
  }

  run_analysis(table, AnalyzeOptions{}, dir);

  CHECK(line_count(dir / "descriptive.csv") == 4);  // header + 3 fields
  CHECK(line_count(dir / "gpd_fit.csv") == 4);
  // One block per p, 3 fields each.
  CHECK(line_count(dir / "top_share.csv") == 1 + 3 * 3);
  CHECK(line_count(dir / "outliers.csv") >= 2);
  CHECK(std::filesystem::exists(dir / "ccdf" / "A.csv"));
  CHECK(std::filesystem::exists(dir / "summary.json"));

  std::filesystem::remove_all(dir);
}

TEST_CASE("run_analysis records per-field failures without aborting") {
  ScoreTable table;
  // Field too small for GPD fitting next to a healthy one.
  for (int i = 0; i < 5; ++i) {
    ScoreRow row;
    row.researcher_id = "s" + std::to_string(i);
    row.field_id = "SMALL";
    row.fss_star = 0.1 * (i + 1);
    table.rows.push_back(row);
  }
  const std::vector<FieldSpec> specs = {{"BIG", 100, 0.0, 0.3, 0.1, 0.0, {}}};
  const auto population = generate_population(specs, 8);
  for (const auto& [id, score] : population[0].entries) {
    ScoreRow row;
    row.researcher_id = id;
    row.field_id = "BIG";
    row.fss_star = score;
    table.rows.push_back(row);
  }

  const auto dir = temp_dir("analysis_errors");
  run_analysis(table, AnalyzeOptions{}, dir);

  std::ifstream in(dir / "gpd_fit.csv");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content.find("at least 30") != std::string::npos);  // SMALL error row
  CHECK(content.find("BIG") != std::string::npos);

  std::filesystem::remove_all(dir);
}

TEST_CASE("run_simulation emits per-factor tables and an evaluation") {
  const auto dir = temp_dir("simulation");
  const std::vector<FieldSpec> specs = {
      {"A", 60, 0.10, 0.35, 0.15, 0.0, {}},
      {"B", 90, 0.30, 0.45, 0.06, -0.01, {}},
  };
  run_simulation(specs, 12, AnalyzeOptions{}, dir);

  CHECK(std::filesystem::exists(dir / "scores.csv"));
  for (const char* factor :
       {"mean_all", "mean_nonzero", "median_all", "median_nonzero"}) {
    CHECK(std::filesystem::exists(dir /
                                  ("standardized_" + std::string(factor) + ".csv")));
  }
  // 4 factors x 3 p values + header.
  CHECK(line_count(dir / "evaluation.csv") == 13);

  // Same seed twice: byte-identical outputs.
  const auto dir2 = temp_dir("simulation_repeat");
  run_simulation(specs, 12, AnalyzeOptions{}, dir2);
  for (const char* name : {"scores.csv", "evaluation.csv"}) {
    std::ifstream a(dir / name), b(dir2 / name);
    std::string sa((std::istreambuf_iterator<char>(a)),
                   std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)),
                   std::istreambuf_iterator<char>());
    CHECK(sa == sb);
  }

  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("percentile output mirrors the worked examples") {
  ScoreTable table;
  for (int i = 0; i < 10; ++i) {
    ScoreRow row;
    row.researcher_id = "r" + std::to_string(i);
    row.field_id = "A";
    row.fss_star = 10.0 - i;
    table.rows.push_back(row);
  }
  std::ostringstream out;
  write_percentile_ranks(table, out);
  CHECK(out.str().find("r2,A,8,70.000") != std::string::npos);
}
