#include "hypa/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hypa/rng.hpp"

namespace hypa {

NodeId NodeDictionary::intern(std::string_view label) {
  auto it = ids_.find(label);
  if (it != ids_.end()) return it->second;
  if (labels_.size() >= std::numeric_limits<NodeId>::max())
    throw std::length_error("node dictionary full");
  const NodeId id = static_cast<NodeId>(labels_.size());
  labels_.emplace_back(label);
  ids_.emplace(labels_.back(), id);
  return id;
}

std::optional<NodeId> NodeDictionary::find(std::string_view label) const {
  auto it = ids_.find(label);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Comma-delimited segments, each holding one or more whitespace-separated
// tokens. An empty segment between commas (or a dangling comma) is malformed.
void split_tokens(std::string_view line, std::size_t line_no,
                  std::vector<std::string_view>& out) {
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view seg = line.substr(
        start, comma == std::string_view::npos ? comma : comma - start);
    seg = trim(seg);
    if (seg.empty()) throw ParseError(line_no, "empty token");
    while (!seg.empty()) {
      std::size_t end = 0;
      while (end < seg.size() &&
             !std::isspace(static_cast<unsigned char>(seg[end])))
        ++end;
      out.push_back(seg.substr(0, end));
      seg = trim(seg.substr(end));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
}

Count parse_multiplicity(std::string_view tok, std::size_t line_no) {
  for (char c : tok)
    if (!is_ascii_digit(c))
      throw ParseError(line_no, "malformed count '" + std::string(tok) + "'");
  Count value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(line_no, "count out of range '" + std::string(tok) + "'");
  if (value == 0) throw ParseError(line_no, "count must be positive");
  return value;
}

}  // namespace

PathCorpus PathCorpus::parse(std::istream& in) {
  PathCorpus corpus;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string_view> tokens;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    tokens.clear();
    split_tokens(line, line_no, tokens);
    Count mult = 1;
    if (tokens.size() >= 2 && is_ascii_digit(tokens.back().front())) {
      mult = parse_multiplicity(tokens.back(), line_no);
      tokens.pop_back();
    }
    std::vector<NodeId> nodes;
    nodes.reserve(tokens.size());
    for (const auto tok : tokens) nodes.push_back(corpus.dict_.intern(tok));
    corpus.add_path(std::move(nodes), mult);
  }
  if (in.bad()) throw std::runtime_error("stream error while reading corpus");
  return corpus;
}

PathCorpus PathCorpus::parse_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open '" + filename + "'");
  return parse(in);
}

void PathCorpus::add_path(std::vector<NodeId> nodes, Count multiplicity) {
  if (nodes.empty()) throw std::invalid_argument("empty path");
  if (multiplicity == 0) throw std::invalid_argument("zero multiplicity");
  for (const NodeId v : nodes)
    if (v >= dict_.size()) throw std::invalid_argument("unknown node id");
  path_count_ += multiplicity;
  traversals_ += multiplicity * static_cast<Count>(nodes.size());
  paths_.push_back(Path{std::move(nodes), multiplicity});
}

void PathCorpus::write(std::ostream& out) const {
  for (const Path& p : paths_) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      if (i) out << ',';
      out << dict_.label(p.nodes[i]);
    }
    // A digit-leading final label would be re-read as a count, so force an
    // explicit one in that case.
    const std::string& last = dict_.label(p.nodes.back());
    if (p.multiplicity > 1 || is_ascii_digit(last.front()))
      out << ',' << p.multiplicity;
    out << '\n';
  }
}

PathCorpus PathCorpus::subsample_paths(double fraction,
                                       std::uint64_t seed) const {
  if (fraction < 0.0 || fraction > 1.0)
    throw std::invalid_argument("fraction must be in [0, 1]");
  const Count total = path_count_;
  const Count target =
      static_cast<Count>(fraction * static_cast<double>(total) + 0.5);

  // Expand to one slot per path occurrence, pick `target` slots without
  // replacement, then fold back into per-row multiplicities.
  std::vector<std::uint32_t> slot_row;
  slot_row.reserve(static_cast<std::size_t>(total));
  for (std::size_t r = 0; r < paths_.size(); ++r)
    for (Count q = 0; q < paths_[r].multiplicity; ++q)
      slot_row.push_back(static_cast<std::uint32_t>(r));

  Rng rng(seed);
  std::vector<Count> picked(paths_.size(), 0);
  for (Count i = 0; i < target; ++i) {
    const std::uint64_t j = i + rng.uniform_below(total - i);
    std::swap(slot_row[i], slot_row[j]);
    ++picked[slot_row[i]];
  }

  PathCorpus out;
  out.dict_ = dict_;
  for (std::size_t r = 0; r < paths_.size(); ++r)
    if (picked[r] > 0) out.add_path(paths_[r].nodes, picked[r]);
  return out;
}

std::size_t SeqHash::operator()(const std::vector<NodeId>& v) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ v.size();
  for (const NodeId x : v) h = Rng::mix(h ^ x);
  return static_cast<std::size_t>(h);
}

SubpathCounts count_subpaths(const PathCorpus& corpus, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const std::size_t window = static_cast<std::size_t>(k) + 1;
  SubpathCounts counts;
  for (const Path& p : corpus.paths()) {
    if (p.nodes.size() < window) continue;
    for (std::size_t i = 0; i + window <= p.nodes.size(); ++i) {
      std::vector<NodeId> key(p.nodes.begin() + i,
                              p.nodes.begin() + i + window);
      counts[std::move(key)] += p.multiplicity;
    }
  }
  return counts;
}

bool FirstOrderGraph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count) return false;
  const auto first = col.begin() + row_ptr[u];
  const auto last = col.begin() + row_ptr[u + 1];
  return std::binary_search(first, last, v);
}

Count FirstOrderGraph::edge_weight(NodeId u, NodeId v) const {
  if (u >= node_count) return 0;
  const auto first = col.begin() + row_ptr[u];
  const auto last = col.begin() + row_ptr[u + 1];
  const auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return 0;
  return weight[static_cast<std::size_t>(it - col.begin())];
}

namespace {

FirstOrderGraph build_graph(std::size_t node_count,
                            std::vector<std::pair<std::uint64_t, Count>> acc) {
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FirstOrderGraph g;
  g.node_count = node_count;
  g.row_ptr.assign(node_count + 1, 0);
  g.col.reserve(acc.size());
  g.weight.reserve(acc.size());
  for (const auto& [key, w] : acc) {
    const NodeId u = static_cast<NodeId>(key >> 32);
    const NodeId v = static_cast<NodeId>(key & 0xFFFFFFFFull);
    ++g.row_ptr[u + 1];
    g.col.push_back(v);
    g.weight.push_back(w);
    g.total_weight += w;
  }
  for (std::size_t i = 0; i < node_count; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
  return g;
}

}  // namespace

FirstOrderGraph induce_graph(const PathCorpus& corpus) {
  std::unordered_map<std::uint64_t, Count> acc;
  for (const Path& p : corpus.paths())
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(p.nodes[i]) << 32) | p.nodes[i + 1];
      acc[key] += p.multiplicity;
    }
  std::vector<std::pair<std::uint64_t, Count>> entries(acc.begin(), acc.end());
  return build_graph(corpus.node_count(), std::move(entries));
}

FirstOrderGraph graph_from_edges(
    std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges,
    std::span<const Count> weights) {
  if (!weights.empty() && weights.size() != edges.size())
    throw std::invalid_argument("weights size mismatch");
  std::unordered_map<std::uint64_t, Count> acc;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u >= node_count || v >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    acc[(static_cast<std::uint64_t>(u) << 32) | v] +=
        weights.empty() ? Count{1} : weights[i];
  }
  std::vector<std::pair<std::uint64_t, Count>> entries(acc.begin(), acc.end());
  return build_graph(node_count, std::move(entries));
}

FirstOrderGraph parse_edge_list(std::istream& in, PathCorpus& corpus) {
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string_view> tokens;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<Count> weights;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    tokens.clear();
    split_tokens(line, line_no, tokens);
    if (tokens.size() < 2 || tokens.size() > 3)
      throw ParseError(line_no, "expected source,target[,weight]");
    const NodeId u = corpus.intern(tokens[0]);
    const NodeId v = corpus.intern(tokens[1]);
    edges.emplace_back(u, v);
    weights.push_back(tokens.size() == 3
                          ? parse_multiplicity(tokens[2], line_no)
                          : Count{1});
  }
  if (in.bad()) throw std::runtime_error("stream error while reading edges");
  return graph_from_edges(corpus.node_count(), edges, weights);
}

void validate_paths_in_graph(const PathCorpus& corpus,
                             const FirstOrderGraph& g) {
  for (const Path& p : corpus.paths())
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i)
      if (!g.has_edge(p.nodes[i], p.nodes[i + 1]))
        throw std::invalid_argument(
            "corpus transition " + corpus.dictionary().label(p.nodes[i]) +
            " -> " + corpus.dictionary().label(p.nodes[i + 1]) +
            " is not an edge of the supplied graph");
}

}  // namespace hypa
