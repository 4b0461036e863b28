// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numeric>
#include <random>

#include "crossfield/errors.hpp"
#include "crossfield/indicator.hpp"

using namespace crossfield;

namespace {

Publication make_pub(std::size_t n_authors, BylineConvention convention,
                     bool intramural = true) {
  Publication p;
  p.id = "p";
  p.year = 2005;
  p.subject_categories = {"SC1"};
  p.citations = 1;
  p.convention = convention;
  for (std::size_t i = 0; i < n_authors; ++i) {
    std::string institution = "uniA";
    if (!intramural && i + 1 == n_authors) institution = "uniB";
    p.byline.push_back({"r" + std::to_string(i + 1), static_cast<int>(i + 1),
                        institution});
  }
  return p;
}

// Independent re-derivation of the byline weights, structured differently
// from the implementation: builds the raw role map explicitly and divides
// by its total.
std::vector<double> oracle_weights(const Publication& p) {
  const std::size_t n = p.byline.size();
  std::vector<double> raw(n, 0.0);
  if (p.convention == BylineConvention::kAlphabetical || n <= 2) {
    for (auto& w : raw) w = 1.0;
  } else if (p.byline[0].institution_id == p.byline[n - 1].institution_id) {
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] = (i == 0 || i == n - 1) ? 0.40 : 0.20 / double(n - 2);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || i == n - 1) {
        raw[i] = 0.30;
      } else if (i == 1 || i == n - 2) {
        raw[i] = 0.15;
      } else {
        raw[i] = 0.10 / double(n - 4);
      }
    }
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  for (auto& w : raw) w /= total;
  return raw;
}

}  // namespace

TEST_CASE("alphabetical bylines split evenly") {
  const auto p = make_pub(4, BylineConvention::kAlphabetical);
  for (int pos = 1; pos <= 4; ++pos) {
    CHECK(fractional_contribution(p, pos) == doctest::Approx(0.25));
  }
}

TEST_CASE("positional intramural n=5") {
  const auto p = make_pub(5, BylineConvention::kPositional, true);
  CHECK(fractional_contribution(p, 1) == doctest::Approx(0.40));
  CHECK(fractional_contribution(p, 5) == doctest::Approx(0.40));
  for (int pos = 2; pos <= 4; ++pos) {
    CHECK(fractional_contribution(p, pos) == doctest::Approx(0.20 / 3.0));
  }
}

TEST_CASE("positional extramural n=6") {
  const auto p = make_pub(6, BylineConvention::kPositional, false);
  CHECK(fractional_contribution(p, 1) == doctest::Approx(0.30));
  CHECK(fractional_contribution(p, 2) == doctest::Approx(0.15));
  CHECK(fractional_contribution(p, 3) == doctest::Approx(0.10 / 2.0));
  CHECK(fractional_contribution(p, 4) == doctest::Approx(0.10 / 2.0));
  CHECK(fractional_contribution(p, 5) == doctest::Approx(0.15));
  CHECK(fractional_contribution(p, 6) == doctest::Approx(0.30));
}

TEST_CASE("positional n=2 falls back to 1/n") {
  const auto p = make_pub(2, BylineConvention::kPositional, false);
  CHECK(fractional_contribution(p, 1) == doctest::Approx(0.5));
  CHECK(fractional_contribution(p, 2) == doctest::Approx(0.5));
}

TEST_CASE("degenerate positional bylines renormalize to 1") {
  // n=3 extramural: raw 0.30/0.15/0.30 scales to 0.4/0.2/0.4.
  const auto p3 = make_pub(3, BylineConvention::kPositional, false);
  CHECK(fractional_contribution(p3, 1) == doctest::Approx(0.4));
  CHECK(fractional_contribution(p3, 2) == doctest::Approx(0.2));
  // n=4 extramural: raw 0.30/0.15/0.15/0.30 scales to 1/3, 1/6, 1/6, 1/3.
  const auto p4 = make_pub(4, BylineConvention::kPositional, false);
  CHECK(fractional_contribution(p4, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(fractional_contribution(p4, 2) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("weight closure across conventions and sizes") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (auto convention :
         {BylineConvention::kAlphabetical, BylineConvention::kPositional}) {
      for (bool intramural : {true, false}) {
        const auto weights =
            contribution_weights(make_pub(n, convention, intramural));
        const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        for (double w : weights) {
          CHECK(w > 0.0);
          CHECK(w <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("position out of range") {
  const auto p = make_pub(3, BylineConvention::kAlphabetical);
  CHECK_THROWS_AS(fractional_contribution(p, 0), InvalidArgumentError);
  CHECK_THROWS_AS(fractional_contribution(p, 4), InvalidArgumentError);
}

TEST_CASE("normalized citation ratios") {
  Publication p = make_pub(1, BylineConvention::kAlphabetical);
  CitationBaseline baselines;
  baselines.set(2005, "SC1", 2.0);

  p.citations = 4;
  CHECK(normalized_citation(p, baselines) == doctest::Approx(2.0));

  p.citations = 0;
  CHECK(normalized_citation(p, baselines) == 0.0);

  // Two categories: the per-publication baseline is the mean of the cells.
  p.citations = 6;
  p.subject_categories = {"SC1", "SC2"};
  baselines.set(2005, "SC2", 4.0);
  CHECK(normalized_citation(p, baselines) == doctest::Approx(2.0));
}

TEST_CASE("missing baseline names the absent pairs") {
  Publication p = make_pub(1, BylineConvention::kAlphabetical);
  p.citations = 3;
  p.subject_categories = {"SC9"};
  try {
    normalized_citation(p, CitationBaseline{});
    FAIL("expected MissingBaselineError");
  } catch (const MissingBaselineError& e) {
    CHECK(std::string(e.what()).find("SC9") != std::string::npos);
    CHECK(std::string(e.what()).find("2005") != std::string::npos);
  }
}

TEST_CASE("fss worked examples") {
  Researcher r{"r1", "MAT/05", "U1", AcademicRank::kAssistantProbationary, 5.0,
               "uniA"};
  CHECK(fss(r, {}, CitationBaseline{}) == 0.0);

  // t=5, one publication with c=4, cbar=2, f=0.5 -> 0.2.
  Publication p = make_pub(2, BylineConvention::kAlphabetical);
  p.citations = 4;
  CitationBaseline baselines;
  baselines.set(2005, "SC1", 2.0);
  CHECK(fss(r, {p}, baselines) == doctest::Approx(0.2));

  // t=1, (c/cbar=1, f=1) + (c/cbar=3, f=1/3) -> 2.0.
  Researcher r1{"r1", "MAT/05", "U1", AcademicRank::kAssistantProbationary, 1.0,
                "uniA"};
  Publication solo = make_pub(1, BylineConvention::kAlphabetical);
  solo.citations = 2;
  Publication trio = make_pub(3, BylineConvention::kAlphabetical);
  trio.id = "p2";
  trio.citations = 6;
  CHECK(fss(r1, {solo, trio}, baselines) == doctest::Approx(2.0));
}

TEST_CASE("fss matches a brute-force oracle on random fixtures") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double t = 1.0 + (rng() % 8) * 0.5;
    Researcher r{"r1", "F", "U", AcademicRank::kAssistantProbationary, t, "uniA"};
    CitationBaseline baselines;
    std::vector<Publication> pubs;
    const int n_pubs = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n_pubs; ++i) {
      const std::size_t n_authors = 1 + rng() % 6;
      auto p = make_pub(n_authors,
                        rng() % 2 ? BylineConvention::kPositional
                                  : BylineConvention::kAlphabetical,
                        rng() % 2 == 0);
      p.id = "p" + std::to_string(i);
      p.citations = static_cast<long>(rng() % 9);
      // r1 lands at a random byline position.
      const std::size_t slot = rng() % n_authors;
      for (auto& a : p.byline) a.author_ref = "ext:" + a.author_ref;
      p.byline[slot].author_ref = "r1";
      baselines.set(p.year, "SC1", 1.0 + (rng() % 5));
      pubs.push_back(p);
    }

    double expected = 0.0;
    for (const auto& p : pubs) {
      const auto weights = oracle_weights(p);
      for (std::size_t i = 0; i < p.byline.size(); ++i) {
        if (p.byline[i].author_ref != "r1") continue;
        const double cbar = *baselines.mean(p.year, "SC1");
        expected += (static_cast<double>(p.citations) / cbar) * weights[i] *
                    (p.citations > 0 ? 1.0 : 0.0);
      }
    }
    expected /= t;

    CHECK(fss(r, pubs, baselines) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("fss homogeneity") {
  std::mt19937 rng(3);
  Researcher r{"r1", "F", "U", AcademicRank::kAssistantProbationary, 2.0, "uniA"};
  std::vector<Publication> pubs;
  CitationBaseline baselines, doubled;
  for (int i = 0; i < 5; ++i) {
    auto p = make_pub(1 + rng() % 4, BylineConvention::kAlphabetical);
    p.id = "p" + std::to_string(i);
    p.byline[0].author_ref = "r1";
    p.citations = static_cast<long>(rng() % 7);
    pubs.push_back(p);
  }
  baselines.set(2005, "SC1", 3.0);
  doubled.set(2005, "SC1", 6.0);

  auto pubs_doubled = pubs;
  for (auto& p : pubs_doubled) p.citations *= 2;

  const double base = fss(r, pubs, baselines);
  CHECK(fss(r, pubs_doubled, doubled) == doctest::Approx(base));

  Researcher slower = r;
  slower.years_active = 4.0;
  CHECK(fss(slower, pubs, baselines) == doctest::Approx(base / 2.0));
}

TEST_CASE("fss_star normalizes by the stipend coefficient") {
  CHECK(fss_star(0.2, AcademicRank::kAssistantProbationary) ==
        doctest::Approx(0.2));
  CHECK(fss_star(0.2783, AcademicRank::kFullConfirmed) == doctest::Approx(0.1));
  CHECK(fss_star(0.0, AcademicRank::kResearchAssistant) == 0.0);
}

TEST_CASE("fss_star preserves within-rank ordering") {
  std::mt19937 rng(5);
  for (auto rank : kAllRanks) {
    double a = (rng() % 100) / 100.0;
    double b = a + 0.01 + (rng() % 100) / 100.0;
    CHECK(fss_star(a, rank) < fss_star(b, rank));
  }
}

TEST_CASE("gross productivity") {
  Researcher r{"r1", "F", "U", AcademicRank::kAssistantProbationary, 2.0, "uniA"};
  CHECK(gross_productivity(r, {}) == 0.0);

  auto p1 = make_pub(2, BylineConvention::kAlphabetical);
  p1.byline[0].author_ref = "r1";
  auto p2 = p1;
  p2.id = "p2";
  CHECK(gross_productivity(r, {p1, p2}) == doctest::Approx(0.5));

  Researcher solo = r;
  solo.years_active = 1.0;
  auto p3 = make_pub(1, BylineConvention::kAlphabetical);
  p3.byline[0].author_ref = "r1";
  CHECK(gross_productivity(solo, {p3}) == doctest::Approx(1.0));
}

TEST_CASE("percentile rank worked examples") {
  std::vector<std::pair<std::string, double>> ten;
  for (int i = 0; i < 10; ++i) {
    ten.emplace_back("r" + std::to_string(i), 10.0 - i);
  }
  CHECK(percentile_rank(ten, "r2") == doctest::Approx(70.0));  // 3rd of 10

  std::vector<std::pair<std::string, double>> hundred;
  for (int i = 0; i < 100; ++i) {
    hundred.emplace_back("r" + std::to_string(i), 100.0 - i);
  }
  CHECK(percentile_rank(hundred, "r2") == doctest::Approx(97.0));  // 3rd of 100

  CHECK(percentile_rank({{"solo", 1.0}}, "solo") == 0.0);
  CHECK_THROWS_AS(percentile_rank(ten, "ghost"), InvalidArgumentError);
}

TEST_CASE("percentile rank: ties share the minimum rank") {
  const std::vector<std::pair<std::string, double>> scores = {
      {"a", 5.0}, {"b", 5.0}, {"c", 3.0}, {"d", 1.0}};
  CHECK(percentile_rank(scores, "a") == percentile_rank(scores, "b"));
  CHECK(percentile_rank(scores, "a") == doctest::Approx(75.0));
  CHECK(percentile_rank(scores, "c") == doctest::Approx(25.0));
}

TEST_CASE("percentile rank is invariant under increasing transforms") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<std::string, double>> scores;
    const int n = 2 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      scores.emplace_back("r" + std::to_string(i), (rng() % 10) / 3.0);
    }
    auto transformed = scores;
    for (auto& [id, s] : transformed) s = std::exp(2.0 * s) + 1.0;
    for (const auto& [id, s] : scores) {
      CHECK(percentile_rank(scores, id) ==
            doctest::Approx(percentile_rank(transformed, id)));
    }
  }
}
