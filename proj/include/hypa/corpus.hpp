#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hypa/types.hpp"

namespace hypa {

class NodeDictionary {
 public:
  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId id) const { return labels_.at(id); }
  std::size_t size() const { return labels_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> ids_;
};

struct Path {
  std::vector<NodeId> nodes;  // never empty
  Count multiplicity = 1;
};

// A multiset of observed paths over a shared node dictionary.
//
// Text format, one path per line: node labels separated by commas or
// whitespace, optionally followed by an integer multiplicity. Lines starting
// with '#' and blank lines are skipped. A trailing token that begins with a
// digit must be a whole number (the multiplicity); a lone token is always a
// single-node path. CRLF input is accepted.
class PathCorpus {
 public:
  static PathCorpus parse(std::istream& in);
  static PathCorpus parse_file(const std::string& filename);

  NodeId intern(std::string_view label) { return dict_.intern(label); }
  void add_path(std::vector<NodeId> nodes, Count multiplicity = 1);

  const std::vector<Path>& paths() const { return paths_; }
  const NodeDictionary& dictionary() const { return dict_; }
  std::size_t node_count() const { return dict_.size(); }
  Count path_count() const { return path_count_; }         // sum of multiplicities
  Count node_traversals() const { return traversals_; }    // multiplicity-weighted node visits

  void write(std::ostream& out) const;

  // Uniform subsample of round(fraction * path_count()) paths without
  // replacement, multiplicities respected. Dictionary is shared unchanged.
  PathCorpus subsample_paths(double fraction, std::uint64_t seed) const;

 private:
  NodeDictionary dict_;
  std::vector<Path> paths_;
  Count path_count_ = 0;
  Count traversals_ = 0;
};

struct SeqHash {
  std::size_t operator()(const std::vector<NodeId>& v) const;
};

using SubpathCounts = std::unordered_map<std::vector<NodeId>, Count, SeqHash>;

// Multiplicity-weighted counts of all (k+1)-node windows, i.e. paths of
// length k, contiguous in some corpus path. k >= 0; k = 0 counts node visits.
SubpathCounts count_subpaths(const PathCorpus& corpus, int k);

// Weighted digraph over dictionary node ids, CSR by source, columns sorted.
struct FirstOrderGraph {
  std::size_t node_count = 0;
  std::vector<std::size_t> row_ptr;  // size node_count + 1
  std::vector<NodeId> col;
  std::vector<Count> weight;
  Count total_weight = 0;

  std::size_t edge_count() const { return col.size(); }
  bool has_edge(NodeId u, NodeId v) const;
  Count edge_weight(NodeId u, NodeId v) const;
};

// Edges = observed transitions, weights = multiplicity-weighted transition
// counts. Nodes that never transition are kept as isolated nodes.
FirstOrderGraph induce_graph(const PathCorpus& corpus);

FirstOrderGraph graph_from_edges(
    std::size_t node_count,
    std::span<const std::pair<NodeId, NodeId>> edges,
    std::span<const Count> weights = {});

// Edge-list text format: one "source,target[,weight]" per line, '#' comments.
// New labels are interned into the corpus dictionary so ids line up.
FirstOrderGraph parse_edge_list(std::istream& in, PathCorpus& corpus);

// Every consecutive pair in the corpus must be an edge of g.
void validate_paths_in_graph(const PathCorpus& corpus,
                             const FirstOrderGraph& g);

}  // namespace hypa
