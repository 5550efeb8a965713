#pragma once

#include <cstdint>
#include <vector>

#include "hypa/types.hpp"
#include "hypa/xi.hpp"

namespace hypa {

// Frequencies drawn from the urn the capacities describe: per sample, m
// balls are taken without replacement from a pool holding Xi_vw copies of
// each candidate edge. Requires integer capacities (the seed matrix before
// fitting, or hand-built fixtures); throws std::invalid_argument otherwise.
struct EnsembleSamples {
  int n_samples = 0;
  // per_edge[e][s] = frequency of candidate edge e in sample s; edges indexed
  // as in the XiMatrix entry order.
  std::vector<std::vector<std::uint32_t>> per_edge;
};

EnsembleSamples sample_ensemble(const XiMatrix& xi, Count m, int n_samples,
                                std::uint64_t seed);

// Fraction of samples with frequency <= f.
double empirical_cdf(const std::vector<std::uint32_t>& samples, Count f);

}  // namespace hypa
