#include "hypa/synth.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace hypa {

namespace {

NodeId weighted_step(const WeightedDigraph& g, NodeId u, Rng& rng) {
  const std::size_t b = g.row_ptr[u];
  const std::size_t d = g.row_ptr[u + 1] - b;
  const std::size_t pick =
      rng.weighted_index({g.cum.data() + b, d});
  return g.col[b + pick];
}

}  // namespace

SyntheticModel synth_model(int n, double p, double f_anom, int l,
                           std::uint64_t seed, std::size_t enum_cap) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  if (f_anom < 0.0 || f_anom > 1.0)
    throw std::invalid_argument("f_anom must be in [0, 1]");
  if (l < 1) throw std::invalid_argument("l must be >= 1");

  SyntheticModel model;
  model.anomaly_order = l;

  // Erdos-Renyi digraph, no self loops, integer weights uniform on [1, 20].
  Rng graph_rng(Rng::derive(seed, 0));
  WeightedDigraph& g = model.graph;
  g.n = static_cast<std::size_t>(n);
  g.row_ptr.assign(g.n + 1, 0);
  for (NodeId i = 0; i < g.n; ++i) {
    for (NodeId j = 0; j < g.n; ++j) {
      if (i == j) continue;
      if (graph_rng.uniform01() < p) {
        g.col.push_back(j);
        g.weight.push_back(
            static_cast<std::uint32_t>(graph_rng.uniform_int(1, 20)));
      }
    }
    g.row_ptr[i + 1] = g.col.size();
  }
  g.cum.resize(g.col.size());
  for (NodeId u = 0; u < g.n; ++u) {
    double run = 0.0;
    for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e) {
      run += static_cast<double>(g.weight[e]);
      g.cum[e] = run;
    }
  }

  // Depth-first enumeration of every walk of l edges, in node order, so the
  // candidate list is stable for a given graph.
  std::vector<std::vector<NodeId>> walks;
  std::vector<NodeId> stack;
  const auto dfs = [&](auto&& self, NodeId u) -> void {
    stack.push_back(u);
    if (stack.size() == static_cast<std::size_t>(l) + 1) {
      if (walks.size() >= enum_cap)
        throw std::runtime_error(
            "more than " + std::to_string(enum_cap) +
            " candidate walks; raise the enumeration cap");
      walks.push_back(stack);
    } else {
      for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
        self(self, g.col[e]);
    }
    stack.pop_back();
  };
  for (NodeId u = 0; u < g.n; ++u) dfs(dfs, u);
  model.enumerated_walks = walks.size();
  if (walks.empty())
    throw std::invalid_argument(
        "graph has no walk of length " + std::to_string(l) +
        "; increase n or p");

  Rng mark_rng(Rng::derive(seed, 1));
  model.starts_by_node.assign(g.n, {});
  for (const auto& w : walks) {
    if (mark_rng.uniform01() < f_anom) {
      model.starts_by_node[w.front()].push_back(
          static_cast<std::uint32_t>(model.anomalous.size()));
      model.anomalous.push_back(w);
    }
  }
  return model;
}

std::vector<NodeId> synth_walk(const SyntheticModel& model, int length,
                               Rng& rng) {
  if (length < 0) throw std::invalid_argument("length must be >= 0");
  const WeightedDigraph& g = model.graph;
  NodeId u = static_cast<NodeId>(rng.uniform_below(g.n));
  std::vector<NodeId> path{u};
  int steps = 0;
  while (steps < length) {
    const auto& starts = model.starts_by_node[u];
    if (!starts.empty()) {
      const std::size_t pick =
          starts.size() == 1 ? 0 : rng.uniform_below(starts.size());
      const auto& anom = model.anomalous[starts[pick]];
      for (std::size_t t = 1; t < anom.size() && steps < length; ++t) {
        path.push_back(anom[t]);
        ++steps;
      }
      u = path.back();
    } else {
      if (g.out_degree(u) == 0) break;  // dead end, truncate
      u = weighted_step(g, u, rng);
      path.push_back(u);
      ++steps;
    }
  }
  return path;
}

PathCorpus generate_corpus(const SyntheticModel& model, int n_walks,
                           int length, std::uint64_t seed) {
  if (n_walks < 0) throw std::invalid_argument("n_walks must be >= 0");
  PathCorpus corpus;
  for (std::size_t i = 0; i < model.graph.n; ++i)
    corpus.intern("n" + std::to_string(i));
  for (int w = 0; w < n_walks; ++w) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(w)));
    corpus.add_path(synth_walk(model, length, rng));
  }
  return corpus;
}

void write_manifest(std::ostream& out, const SyntheticModel& model) {
  for (const auto& w : model.anomalous) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out << ',';
      out << 'n' << w[i];
    }
    out << '\n';
  }
}

std::vector<std::vector<NodeId>> parse_manifest(std::istream& in,
                                                const NodeDictionary& dict) {
  // Reuse the corpus reader: a manifest is the same line format without
  // counts (labels here never start with a digit).
  PathCorpus tmp = PathCorpus::parse(in);
  std::vector<std::vector<NodeId>> out;
  out.reserve(tmp.paths().size());
  for (const Path& p : tmp.paths()) {
    std::vector<NodeId> seq;
    seq.reserve(p.nodes.size());
    for (const NodeId v : p.nodes) {
      const auto id = dict.find(tmp.dictionary().label(v));
      // A label the corpus never saw cannot take part in any window match;
      // map it to an id no real node carries.
      seq.push_back(id.value_or(kInvalidGram));
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace hypa
