#include "hypa/groundtruth.hpp"

#include <algorithm>

#include "hypa/debruijn.hpp"
#include "hypa/rng.hpp"

namespace hypa {

namespace {

// Transition sampler of one order: observed j-order edges with cumulative
// weights per row.
struct OrderSampler {
  KOrderGraph graph;
  std::vector<double> cum;

  explicit OrderSampler(KOrderGraph g) : graph(std::move(g)) {
    cum.resize(graph.edge_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      double run = 0.0;
      for (std::size_t e = graph.edge_row_ptr()[v];
           e < graph.edge_row_ptr()[v + 1]; ++e) {
        run += static_cast<double>(graph.edge_weight()[e]);
        cum[e] = run;
      }
    }
  }

  // Appends the next node given the last j nodes of `walk`, or returns false
  // at an absorbing gram.
  bool step(std::vector<NodeId>& walk, Rng& rng) const {
    const std::size_t j = static_cast<std::size_t>(graph.order());
    const auto gram =
        graph.find_gram({walk.data() + walk.size() - j, j});
    if (!gram) return false;
    const std::size_t b = graph.edge_row_ptr()[*gram];
    const std::size_t d = graph.edge_row_ptr()[*gram + 1] - b;
    if (d == 0) return false;
    const std::size_t pick = rng.weighted_index({cum.data() + b, d});
    walk.push_back(graph.gram(graph.edge_target()[b + pick]).back());
    return true;
  }
};

}  // namespace

RandomizedCorpus randomize_corpus(const PathCorpus& corpus, int k,
                                  std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("randomization needs k >= 2");

  // Samplers for orders 1 .. k-1; order j drives the step taken with j nodes
  // of history, so short prefixes ramp up through the lower orders.
  std::vector<OrderSampler> samplers;
  samplers.reserve(static_cast<std::size_t>(k) - 1);
  for (int j = 1; j <= k - 1; ++j)
    samplers.emplace_back(build_korder(corpus, j));

  RandomizedCorpus out;
  // Carry the dictionary over so node ids in the shuffled walks keep meaning.
  for (NodeId v = 0; v < corpus.node_count(); ++v)
    out.corpus.intern(corpus.dictionary().label(v));
  std::uint64_t stream = 0;
  std::vector<NodeId> walk;
  for (const Path& p : corpus.paths()) {
    for (Count rep = 0; rep < p.multiplicity; ++rep) {
      Rng rng(Rng::derive(seed, stream++));
      if (p.nodes.size() == 1) {
        out.corpus.add_path(p.nodes);
        continue;
      }
      walk.assign(1, p.nodes.front());
      while (walk.size() < p.nodes.size()) {
        const std::size_t j =
            std::min<std::size_t>(static_cast<std::size_t>(k) - 1,
                                  walk.size());
        if (!samplers[j - 1].step(walk, rng)) {
          ++out.truncated;
          break;
        }
      }
      out.corpus.add_path(walk);
    }
  }
  return out;
}

GroundTruthResult ground_truth_labels(const PathCorpus& corpus, int k,
                                      double alpha, int m_samples,
                                      std::uint64_t seed,
                                      CdfEstimator estimator) {
  if (k < 2) throw std::invalid_argument("ground truth needs k >= 2");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must be in (0, 1]");
  if (m_samples < 1) throw std::invalid_argument("m_samples must be >= 1");

  const KOrderGraph g = build_korder(corpus, k);
  const PossibleEdges candidates = possible_edges(g);

  GroundTruthResult res;
  res.k = k;
  res.alpha = alpha;
  res.samples = m_samples;
  res.estimator = estimator;

  std::vector<Count> below(candidates.size(), 0);
  std::vector<Count> equal(candidates.size(), 0);
  std::vector<Count> counts(candidates.size());
  std::vector<NodeId> window;

  const std::size_t kk = static_cast<std::size_t>(k);
  for (int s = 0; s < m_samples; ++s) {
    const RandomizedCorpus rnd =
        randomize_corpus(corpus, k, Rng::derive(seed, s));
    std::fill(counts.begin(), counts.end(), 0);
    for (const Path& p : rnd.corpus.paths()) {
      if (p.nodes.size() < kk + 1) continue;
      for (std::size_t i = 0; i + kk + 1 <= p.nodes.size(); ++i) {
        // Each (k+1)-window of a walk over observed transitions is a
        // candidate edge of the original graph; anything else is counted as
        // unmatched instead of crashing.
        const auto src = g.find_gram({p.nodes.data() + i, kk});
        const auto dst = g.find_gram({p.nodes.data() + i + 1, kk});
        if (!src || !dst) {
          ++res.unmatched_windows;
          continue;
        }
        const auto idx = candidates.find(*src, *dst);
        if (!idx) {
          ++res.unmatched_windows;
          continue;
        }
        counts[*idx] += p.multiplicity;
      }
    }
    for (std::size_t e = 0; e < candidates.size(); ++e) {
      if (counts[e] < candidates.freq[e]) ++below[e];
      if (counts[e] == candidates.freq[e]) ++equal[e];
    }
  }

  res.rows.resize(candidates.size());
  const double msd = static_cast<double>(m_samples);
  std::size_t e = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v)
    for (std::size_t i = candidates.row_ptr[v]; i < candidates.row_ptr[v + 1];
         ++i, ++e) {
      GroundTruthRow& row = res.rows[e];
      row.source = static_cast<GramId>(v);
      row.target = candidates.target[i];
      row.freq = candidates.freq[i];
      const double bl = static_cast<double>(below[i]);
      const double eq = static_cast<double>(equal[i]);
      row.cdf = estimator == CdfEstimator::midpoint
                    ? (bl + 0.5 * eq) / msd
                    : (bl + eq) / msd;
      if (row.cdf >= 1.0 - alpha)
        row.label = Label::over;
      else if (row.cdf < alpha)
        row.label = Label::under;
      else
        row.label = Label::normal;
    }
  return res;
}

}  // namespace hypa
