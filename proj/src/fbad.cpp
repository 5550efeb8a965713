#include "hypa/fbad.hpp"

#include <cmath>

namespace hypa {

FbadResult fbad_score(const KOrderGraph& g, double alpha) {
  if (!(alpha >= 0.0))
    throw std::invalid_argument("alpha must be >= 0");

  FbadResult res;
  res.k = g.order();
  res.alpha = alpha;

  const auto& weights = g.edge_weight();
  const std::size_t n = weights.size();
  if (n == 0) return res;

  double sum = 0.0;
  for (const Count w : weights) sum += static_cast<double>(w);
  res.mu = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const Count w : weights) {
    const double d = static_cast<double>(w) - res.mu;
    ss += d * d;
  }
  res.sigma = std::sqrt(ss / static_cast<double>(n));

  res.rows.reserve(n);
  for (std::size_t v = 0; v < g.node_count(); ++v)
    for (std::size_t e = g.edge_row_ptr()[v]; e < g.edge_row_ptr()[v + 1];
         ++e) {
      FbadRow row;
      row.source = static_cast<GramId>(v);
      row.target = g.edge_target()[e];
      row.freq = g.edge_weight()[e];
      const double f = static_cast<double>(row.freq);
      row.zscore = res.sigma > 0.0 ? (f - res.mu) / res.sigma : 0.0;
      if (f > res.mu + res.sigma * alpha)
        row.label = Label::over;
      else if (f < res.mu - res.sigma * alpha)
        row.label = Label::under;
      else
        row.label = Label::normal;
      res.rows.push_back(row);
    }
  return res;
}

FbadResult fbad_detect(const PathCorpus& corpus, int k, double alpha) {
  const KOrderGraph g = build_korder(corpus, k);
  return fbad_score(g, alpha);
}

}  // namespace hypa
