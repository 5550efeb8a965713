#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hypa/corpus.hpp"
#include "hypa/rng.hpp"
#include "hypa/types.hpp"

namespace hypa {

// First-order weighted digraph for walk simulation: CSR with per-row
// cumulative weights for O(log d) weighted steps.
struct WeightedDigraph {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<NodeId> col;
  std::vector<std::uint32_t> weight;
  std::vector<double> cum;  // running weight totals within each row

  std::size_t out_degree(NodeId u) const {
    return row_ptr[u + 1] - row_ptr[u];
  }
};

// Walk model with planted anomalies: a directed Erdos-Renyi graph with
// integer edge weights in [1, 20], plus a set of length-l walks marked
// anomalous. Walkers step proportionally to edge weight except that a walker
// standing on the first node of a marked walk follows one of its marked
// walks deterministically to the end (or until the step budget runs out).
struct SyntheticModel {
  WeightedDigraph graph;
  int anomaly_order = 0;  // l
  std::vector<std::vector<NodeId>> anomalous;  // each l+1 nodes
  std::vector<std::vector<std::uint32_t>> starts_by_node;
  std::size_t enumerated_walks = 0;  // number of length-l walks in the graph
};

// Builds the graph, enumerates every length-l walk (error beyond `enum_cap`),
// marks each independently with probability f_anom. Throws when no length-l
// walk exists.
SyntheticModel synth_model(int n, double p, double f_anom, int l,
                           std::uint64_t seed,
                           std::size_t enum_cap = 1'000'000);

// One walk of at most `length` edges from a uniform random start node;
// truncated at nodes with no outgoing edge. Marked walks re-trigger whenever
// the walker lands on a start node again, including right after finishing
// one.
std::vector<NodeId> synth_walk(const SyntheticModel& model, int length,
                               Rng& rng);

// n_walks independent walks, node labels "n0", "n1", ... Fixed seed, fixed
// byte-identical corpus.
PathCorpus generate_corpus(const SyntheticModel& model, int n_walks,
                           int length, std::uint64_t seed);

// One anomalous walk per line, comma-joined labels.
void write_manifest(std::ostream& out, const SyntheticModel& model);

// Parses a manifest back into node-id sequences against a dictionary.
std::vector<std::vector<NodeId>> parse_manifest(std::istream& in,
                                                const NodeDictionary& dict);

}  // namespace hypa
