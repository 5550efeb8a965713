#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypa/corpus.hpp"
#include "hypa/types.hpp"

namespace hypa {

// Interned fixed-length node sequences, ids in first-appearance order.
class GramSet {
 public:
  explicit GramSet(int k);

  GramId intern(std::span<const NodeId> gram);
  std::optional<GramId> find(std::span<const NodeId> gram) const;
  std::span<const NodeId> gram(GramId id) const;
  std::size_t size() const { return size_; }
  int order() const { return k_; }

 private:
  void grow();
  static std::uint64_t hash(std::span<const NodeId> gram);

  int k_;
  std::size_t size_ = 0;
  std::vector<NodeId> flat_;     // k_ entries per gram
  std::vector<GramId> table_;    // open addressing, kInvalidGram = empty
  std::size_t mask_ = 0;
};

// Order-k graph of a corpus: one node per observed k-gram, one edge per
// observed (k+1)-gram, edge weight = multiplicity-weighted window count.
// Edges are CSR by source gram with sorted targets.
class KOrderGraph {
 public:
  int order() const { return grams_.order(); }
  std::size_t node_count() const { return grams_.size(); }
  std::size_t edge_count() const { return target_.size(); }
  Count total_weight() const { return m_; }  // sum of edge weights

  std::span<const NodeId> gram(GramId id) const { return grams_.gram(id); }
  std::optional<GramId> find_gram(std::span<const NodeId> g) const {
    return grams_.find(g);
  }
  std::string gram_label(GramId id, const NodeDictionary& dict) const;

  const std::vector<std::size_t>& edge_row_ptr() const { return row_ptr_; }
  const std::vector<GramId>& edge_target() const { return target_; }
  const std::vector<Count>& edge_weight() const { return weight_; }

  Count out_weight(GramId v) const { return out_weight_[v]; }
  Count in_weight(GramId v) const { return in_weight_[v]; }
  Count edge_weight_between(GramId v, GramId w) const;

  friend KOrderGraph build_korder(const PathCorpus& corpus, int k);

 private:
  explicit KOrderGraph(int k) : grams_(k) {}

  GramSet grams_;
  std::vector<std::size_t> row_ptr_;
  std::vector<GramId> target_;
  std::vector<Count> weight_;
  std::vector<Count> out_weight_;
  std::vector<Count> in_weight_;
  Count m_ = 0;
};

// k >= 1. Paths shorter than k nodes contribute nothing; a path of exactly k
// nodes contributes its gram but no edge. k = 1 reproduces induce_graph.
KOrderGraph build_korder(const PathCorpus& corpus, int k);

// Candidate edge set the null model distributes mass over: pairs (v, w) of
// observed grams whose sequences overlap (v's tail = w's head), CSR by source
// with sorted targets, carrying the observed frequency (0 for unobserved
// candidates). For k = 1 overlap is vacuous, so candidates are restricted to
// the edges of `first_order` (pass the induced graph when none is supplied
// externally); for k >= 2 `first_order` is ignored, overlap already forces
// every consecutive pair onto an edge of the underlying graph.
struct PossibleEdges {
  std::vector<std::size_t> row_ptr;
  std::vector<GramId> target;
  std::vector<Count> freq;

  std::size_t size() const { return target.size(); }
  // Index into target/freq, or nullopt if (v, w) is not a candidate.
  std::optional<std::size_t> find(GramId v, GramId w) const;
};

PossibleEdges possible_edges(const KOrderGraph& g,
                             const FirstOrderGraph* first_order = nullptr);

// The (k+1)-node sequence a candidate edge stands for.
std::vector<NodeId> edge_sequence(const KOrderGraph& g, GramId v, GramId w);

// Row-stochastic transition probabilities over observed edges. Rows of grams
// with no outgoing weight are all-zero.
struct TransitionMatrix {
  std::vector<std::size_t> row_ptr;
  std::vector<GramId> target;
  std::vector<double> prob;
};

TransitionMatrix transition_matrix(const KOrderGraph& g);

struct EigenEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Leading eigenvalue of the binary adjacency matrix by power iteration:
// all-ones start, relative tolerance 1e-8, at most 200 iterations.
EigenEstimate leading_eigenvalue(const FirstOrderGraph& g);

struct PathCountBound {
  Count walk_count = 0;   // number of length-k walks, exact
  bool saturated = false; // walk_count overflowed uint64
  double bound = 0.0;     // |V|^2 * lambda1^k
  bool holds = false;
  EigenEstimate eigen;
};

// Checks walk_count <= |V|^2 * lambda1^k (small epsilon absorbs the
// eigenvalue tolerance). A saturated count is reported, never silently
// wrapped.
PathCountBound path_count_bound_check(const FirstOrderGraph& g, int k);

}  // namespace hypa
