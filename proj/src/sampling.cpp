#include "hypa/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "hypa/rng.hpp"

namespace hypa {

EnsembleSamples sample_ensemble(const XiMatrix& xi, Count m, int n_samples,
                                std::uint64_t seed) {
  if (n_samples < 0) throw std::invalid_argument("n_samples must be >= 0");

  // The urn only makes sense for whole-ball capacities.
  Count pool_size = 0;
  for (const double v : xi.value) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)) || r < 0.0)
      throw std::invalid_argument("capacities are not integers");
    pool_size += static_cast<Count>(r);
  }
  if (m > pool_size)
    throw std::invalid_argument("cannot draw more than the pool holds");

  std::vector<std::uint32_t> pool;
  pool.reserve(pool_size);
  for (std::size_t e = 0; e < xi.size(); ++e) {
    const Count copies = static_cast<Count>(std::round(xi.value[e]));
    pool.insert(pool.end(), copies, static_cast<std::uint32_t>(e));
  }

  EnsembleSamples out;
  out.n_samples = n_samples;
  out.per_edge.assign(xi.size(), std::vector<std::uint32_t>(n_samples, 0));

  std::vector<std::uint32_t> counts(xi.size());
  for (int s = 0; s < n_samples; ++s) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(s)));
    std::fill(counts.begin(), counts.end(), 0);
    // Partial Fisher-Yates: after i swaps the prefix is a uniform draw of i
    // balls without replacement. The pool need not be reset between samples;
    // any permutation is a valid starting state.
    for (Count i = 0; i < m; ++i) {
      const Count j = i + rng.uniform_below(pool_size - i);
      std::swap(pool[i], pool[j]);
      ++counts[pool[i]];
    }
    for (std::size_t e = 0; e < xi.size(); ++e) out.per_edge[e][s] = counts[e];
  }
  return out;
}

double empirical_cdf(const std::vector<std::uint32_t>& samples, Count f) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::size_t le = 0;
  for (const std::uint32_t v : samples)
    if (v <= f) ++le;
  return static_cast<double>(le) / static_cast<double>(samples.size());
}

}  // namespace hypa
