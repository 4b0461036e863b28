// Copyright 2026 The crossfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CROSSFIELD_INGEST_HPP
#define CROSSFIELD_INGEST_HPP

#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "crossfield/model.hpp"

namespace crossfield {

struct Dataset {
  std::vector<Researcher> researchers;
  std::vector<Publication> publications;
  CitationBaseline baselines;
  std::vector<std::string> provenance;  // source-file digests
};

// researchers.csv: id,field,uda,rank,years_active,institution
std::vector<Researcher> load_researchers(std::istream& in);

// publications.csv: id,year,categories,citations,convention,byline
// categories semicolon-joined; byline semicolon-joined "author_ref@institution"
// tokens in byline order.
std::vector<Publication> load_publications(std::istream& in);

// baselines.csv: year,category,mean_cited
CitationBaseline load_baselines(std::istream& in);
void write_baselines(const CitationBaseline& baselines, std::ostream& out);

// Mean citations of cited (>= 1 citation) publications per (year, category).
// A publication with k categories contributes to all k cells; uncited
// publications contribute nowhere, so every stored mean is >= 1.
CitationBaseline compute_baselines(const std::vector<Publication>& publications);

// Fields where at least `min_cited_share` of the member researchers have a
// publication with at least one citation.
std::set<std::string> filter_eligible_fields(const Dataset& dataset,
                                             double min_cited_share = 0.5);

}  // namespace crossfield

#endif  // CROSSFIELD_INGEST_HPP
