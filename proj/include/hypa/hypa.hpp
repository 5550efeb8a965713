#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include "hypa/corpus.hpp"
#include "hypa/debruijn.hpp"
#include "hypa/types.hpp"
#include "hypa/xi.hpp"

namespace hypa {

enum class Label : std::uint8_t { normal, over, under, unscored };

std::string_view label_name(Label l);

struct ScoreRow {
  GramId source = 0;
  GramId target = 0;
  Count freq = 0;
  double xi = 0.0;
  double score = 0.0;  // NaN on unscored rows
  Label label = Label::normal;
};

// One row per candidate edge, ordered by (source, target) gram id. Rows with
// zero capacity and zero frequency carry no information and stay unscored.
struct ScoreTable {
  int k = 0;
  Count m = 0;
  double xi_total = 0.0;
  double alpha = std::nan("");  // set by classify
  std::vector<ScoreRow> rows;
};

struct HypaOptions {
  double tolerance = -1.0;  // negative = default (see FitOptions)
  int max_iterations = 5000;
  int threads = 1;
  // Optional externally supplied first-order topology. Must cover every
  // corpus transition; restricts the k = 1 candidate set.
  const FirstOrderGraph* first_order = nullptr;
};

struct HypaResult {
  KOrderGraph graph;
  XiMatrix xi;
  ScoreTable scores;
};

// Full pipeline: project the corpus to order k, fit capacities to the
// observed degrees, score every candidate edge with the cumulative
// probability of its observed frequency under the fitted null.
HypaResult compute_hypa(const PathCorpus& corpus, int k,
                        const HypaOptions& options = {});

// Score table for an existing fitted capacity matrix.
ScoreTable score_edges(const XiMatrix& xi, int threads = 1);

// alpha in (0, 1]: score < alpha labels under, score > 1 - alpha labels over
// (under wins if both apply), everything else normal. Unscored rows are left
// alone.
void classify(ScoreTable& table, double alpha);

}  // namespace hypa
