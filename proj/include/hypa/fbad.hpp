#pragma once

#include <vector>

#include "hypa/debruijn.hpp"
#include "hypa/hypa.hpp"
#include "hypa/types.hpp"

namespace hypa {

// Frequency-based detection: an observed k-order edge is anomalous when its
// weight leaves the band mu +/- sigma * alpha around the mean edge weight
// (population standard deviation, strict inequalities). Only observed edges
// take part; there is no null model and no notion of unobserved candidates.
struct FbadRow {
  GramId source = 0;
  GramId target = 0;
  Count freq = 0;
  double zscore = 0.0;  // (freq - mu) / sigma, 0 when sigma = 0
  Label label = Label::normal;
};

struct FbadResult {
  int k = 0;
  double mu = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  std::vector<FbadRow> rows;  // ordered by (source, target)
};

FbadResult fbad_score(const KOrderGraph& g, double alpha);

FbadResult fbad_detect(const PathCorpus& corpus, int k, double alpha);

}  // namespace hypa
