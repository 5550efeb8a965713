#pragma once

#include <cstdint>
#include <vector>

#include "hypa/corpus.hpp"
#include "hypa/hypa.hpp"
#include "hypa/types.hpp"

namespace hypa {

// Null corpora for order-k analysis: every observed path is replaced by a
// random walk of the same start node and intended length, driven by the
// corpus's own transition frequencies of order k-1 (lower orders fill in
// while the history is still shorter than k-1). Walks that reach a gram with
// no outgoing transition stop early and are counted in `truncated`.
// Single-node paths pass through unchanged.
struct RandomizedCorpus {
  PathCorpus corpus;
  std::size_t truncated = 0;
};

RandomizedCorpus randomize_corpus(const PathCorpus& corpus, int k,
                                  std::uint64_t seed);

enum class CdfEstimator {
  midpoint,     // (below + 0.5 * equal) / samples
  categorical,  // (below + equal) / samples
};

struct GroundTruthRow {
  GramId source = 0;
  GramId target = 0;
  Count freq = 0;
  double cdf = 0.0;
  Label label = Label::normal;
};

struct GroundTruthResult {
  int k = 0;
  double alpha = 0.0;
  int samples = 0;
  CdfEstimator estimator = CdfEstimator::midpoint;
  std::vector<GroundTruthRow> rows;  // candidate edges of the observed graph
  // (k+1)-windows of randomized walks that did not land on a candidate edge
  // of the original graph; stays 0 unless something is inconsistent.
  std::size_t unmatched_windows = 0;
};

// Simulation-based labels: the observed frequency of each candidate edge is
// placed within the distribution of its frequency across `m_samples`
// randomized corpora; the edge is over-represented when that empirical CDF
// reaches 1 - alpha and under-represented when it stays below alpha.
GroundTruthResult ground_truth_labels(const PathCorpus& corpus, int k,
                                      double alpha, int m_samples,
                                      std::uint64_t seed,
                                      CdfEstimator estimator =
                                          CdfEstimator::midpoint);

}  // namespace hypa
