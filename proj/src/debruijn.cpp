#include "hypa/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "hypa/kernels.hpp"
#include "hypa/rng.hpp"

namespace hypa {

GramSet::GramSet(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("gram order must be >= 1");
  table_.assign(16, kInvalidGram);
  mask_ = table_.size() - 1;
}

std::uint64_t GramSet::hash(std::span<const NodeId> gram) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ gram.size();
  for (const NodeId x : gram) h = Rng::mix(h ^ x);
  return h;
}

void GramSet::grow() {
  std::vector<GramId> fresh(table_.size() * 2, kInvalidGram);
  const std::size_t mask = fresh.size() - 1;
  for (const GramId id : table_) {
    if (id == kInvalidGram) continue;
    std::size_t slot = hash(gram(id)) & mask;
    while (fresh[slot] != kInvalidGram) slot = (slot + 1) & mask;
    fresh[slot] = id;
  }
  table_ = std::move(fresh);
  mask_ = mask;
}

GramId GramSet::intern(std::span<const NodeId> g) {
  if (g.size() != static_cast<std::size_t>(k_))
    throw std::invalid_argument("gram length mismatch");
  if (size_ * 2 >= table_.size()) grow();
  std::size_t slot = hash(g) & mask_;
  while (table_[slot] != kInvalidGram) {
    const GramId id = table_[slot];
    if (std::equal(g.begin(), g.end(), flat_.begin() + std::size_t{id} * k_))
      return id;
    slot = (slot + 1) & mask_;
  }
  if (size_ >= std::numeric_limits<GramId>::max())
    throw std::length_error("gram set full");
  const GramId id = static_cast<GramId>(size_++);
  flat_.insert(flat_.end(), g.begin(), g.end());
  table_[slot] = id;
  return id;
}

std::optional<GramId> GramSet::find(std::span<const NodeId> g) const {
  if (g.size() != static_cast<std::size_t>(k_)) return std::nullopt;
  std::size_t slot = hash(g) & mask_;
  while (table_[slot] != kInvalidGram) {
    const GramId id = table_[slot];
    if (std::equal(g.begin(), g.end(), flat_.begin() + std::size_t{id} * k_))
      return id;
    slot = (slot + 1) & mask_;
  }
  return std::nullopt;
}

std::span<const NodeId> GramSet::gram(GramId id) const {
  if (id >= size_) throw std::out_of_range("gram id");
  return {flat_.data() + std::size_t{id} * k_, static_cast<std::size_t>(k_)};
}

std::string KOrderGraph::gram_label(GramId id,
                                    const NodeDictionary& dict) const {
  const auto g = gram(id);
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += '|';
    out += dict.label(g[i]);
  }
  return out;
}

Count KOrderGraph::edge_weight_between(GramId v, GramId w) const {
  const auto first = target_.begin() + row_ptr_[v];
  const auto last = target_.begin() + row_ptr_[v + 1];
  const auto it = std::lower_bound(first, last, w);
  if (it == last || *it != w) return 0;
  return weight_[static_cast<std::size_t>(it - target_.begin())];
}

KOrderGraph build_korder(const PathCorpus& corpus, int k) {
  if (k < 1) throw std::invalid_argument("order must be >= 1");
  KOrderGraph g(k);
  const std::size_t kk = static_cast<std::size_t>(k);
  std::unordered_map<std::uint64_t, Count> acc;
  for (const Path& p : corpus.paths()) {
    if (p.nodes.size() < kk) continue;
    GramId prev = g.grams_.intern({p.nodes.data(), kk});
    for (std::size_t i = 1; i + kk <= p.nodes.size(); ++i) {
      const GramId cur = g.grams_.intern({p.nodes.data() + i, kk});
      acc[(static_cast<std::uint64_t>(prev) << 32) | cur] += p.multiplicity;
      prev = cur;
    }
  }

  std::vector<std::pair<std::uint64_t, Count>> entries(acc.begin(), acc.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const std::size_t n = g.grams_.size();
  g.row_ptr_.assign(n + 1, 0);
  g.out_weight_.assign(n, 0);
  g.in_weight_.assign(n, 0);
  g.target_.reserve(entries.size());
  g.weight_.reserve(entries.size());
  for (const auto& [key, w] : entries) {
    const GramId v = static_cast<GramId>(key >> 32);
    const GramId t = static_cast<GramId>(key & 0xFFFFFFFFull);
    ++g.row_ptr_[v + 1];
    g.target_.push_back(t);
    g.weight_.push_back(w);
    g.out_weight_[v] += w;
    g.in_weight_[t] += w;
    g.m_ += w;
  }
  for (std::size_t i = 0; i < n; ++i) g.row_ptr_[i + 1] += g.row_ptr_[i];
  return g;
}

std::optional<std::size_t> PossibleEdges::find(GramId v, GramId w) const {
  const auto first = target.begin() + row_ptr[v];
  const auto last = target.begin() + row_ptr[v + 1];
  const auto it = std::lower_bound(first, last, w);
  if (it == last || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - target.begin());
}

PossibleEdges possible_edges(const KOrderGraph& g,
                             const FirstOrderGraph* first_order) {
  const std::size_t n = g.node_count();
  const int k = g.order();
  PossibleEdges pe;
  pe.row_ptr.assign(n + 1, 0);

  if (k == 1 && first_order == nullptr) {
    // Candidates = observed edges: with no external edge list the underlying
    // graph is the induced one, whose edge set is exactly what was observed.
    pe.target = g.edge_target();
    pe.freq = g.edge_weight();
    pe.row_ptr = g.edge_row_ptr();
    return pe;
  }

  std::vector<std::vector<GramId>> rows(n);
  if (k == 1) {
    // Gram ids and dictionary ids may differ; bridge through the sequences.
    std::vector<GramId> node_to_gram(first_order->node_count, kInvalidGram);
    for (std::size_t v = 0; v < n; ++v) {
      const NodeId u = g.gram(static_cast<GramId>(v))[0];
      if (u >= first_order->node_count)
        throw std::invalid_argument("graph does not cover corpus nodes");
      node_to_gram[u] = static_cast<GramId>(v);
    }
    for (NodeId u = 0; u < first_order->node_count; ++u) {
      if (node_to_gram[u] == kInvalidGram) continue;
      for (std::size_t e = first_order->row_ptr[u];
           e < first_order->row_ptr[u + 1]; ++e) {
        const GramId t = node_to_gram[first_order->col[e]];
        if (t != kInvalidGram) rows[node_to_gram[u]].push_back(t);
      }
    }
  } else {
    // (v, w) is a candidate iff v's last k-1 nodes equal w's first k-1
    // nodes; that overlap lands every consecutive node pair on an observed
    // edge, so no further graph check is needed.
    GramSet stubs(k - 1);
    std::vector<GramId> head(n);
    std::vector<GramId> tail(n);
    const std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t v = 0; v < n; ++v) {
      const auto seq = g.gram(static_cast<GramId>(v));
      head[v] = stubs.intern(seq.first(kk - 1));
      tail[v] = stubs.intern(seq.last(kk - 1));
    }
    std::vector<std::vector<GramId>> by_head(stubs.size());
    for (std::size_t v = 0; v < n; ++v)
      by_head[head[v]].push_back(static_cast<GramId>(v));
    for (std::size_t v = 0; v < n; ++v) rows[v] = by_head[tail[v]];
  }

  std::size_t total = 0;
  for (auto& r : rows) {
    std::sort(r.begin(), r.end());
    total += r.size();
  }
  pe.target.reserve(total);
  pe.freq.reserve(total);
  for (std::size_t v = 0; v < n; ++v) {
    for (const GramId w : rows[v]) {
      pe.target.push_back(w);
      pe.freq.push_back(g.edge_weight_between(static_cast<GramId>(v), w));
    }
    pe.row_ptr[v + 1] = pe.target.size();
  }
  return pe;
}

std::vector<NodeId> edge_sequence(const KOrderGraph& g, GramId v, GramId w) {
  const auto src = g.gram(v);
  const auto dst = g.gram(w);
  std::vector<NodeId> seq(src.begin(), src.end());
  seq.push_back(dst.back());
  return seq;
}

TransitionMatrix transition_matrix(const KOrderGraph& g) {
  TransitionMatrix t;
  t.row_ptr = g.edge_row_ptr();
  t.target = g.edge_target();
  t.prob.resize(g.edge_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const Count total = g.out_weight(static_cast<GramId>(v));
    if (total == 0) continue;
    for (std::size_t e = t.row_ptr[v]; e < t.row_ptr[v + 1]; ++e)
      t.prob[e] = static_cast<double>(g.edge_weight()[e]) /
                  static_cast<double>(total);
  }
  return t;
}

EigenEstimate leading_eigenvalue(const FirstOrderGraph& g) {
  const std::size_t n = g.node_count;
  EigenEstimate est;
  if (n == 0) {
    est.converged = true;
    return est;
  }
  const auto& ops = kernels::active_ops();
  std::vector<double> x(n, 1.0), y(n);
  double prev = 0.0;
  for (int it = 1; it <= 200; ++it) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t b = g.row_ptr[u];
      y[u] = ops.gather_sum(x.data(), g.col.data() + b, g.row_ptr[u + 1] - b);
    }
    const double norm = std::sqrt(ops.dot(y.data(), y.data(), n));
    est.iterations = it;
    if (norm == 0.0) {
      // Nilpotent adjacency: the iterate died, spectral radius is 0.
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    // x is kept unit-norm, so the Rayleigh-style estimate is just |Ax|.
    est.value = norm;
    ops.scale(y.data(), n, 1.0 / norm);
    x.swap(y);
    if (std::abs(est.value - prev) <= 1e-8 * std::max(est.value, 1.0)) {
      est.converged = true;
      return est;
    }
    prev = est.value;
  }
  est.converged = false;
  return est;
}

PathCountBound path_count_bound_check(const FirstOrderGraph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const std::size_t n = g.node_count;
  PathCountBound out;
  out.eigen = leading_eigenvalue(g);

  // walk_count = sum of all entries of A^k, accumulated exactly in uint64
  // with overflow detection (v starts as all-ones, v <- A v, k times).
  std::vector<Count> v(n, 1), next(n);
  for (int step = 0; step < k && !out.saturated; ++step) {
    for (std::size_t u = 0; u < n; ++u) {
      Count acc = 0;
      for (std::size_t e = g.row_ptr[u]; e < g.row_ptr[u + 1]; ++e)
        if (__builtin_add_overflow(acc, v[g.col[e]], &acc)) {
          out.saturated = true;
          break;
        }
      next[u] = acc;
      if (out.saturated) break;
    }
    v.swap(next);
  }
  if (!out.saturated)
    for (std::size_t u = 0; u < n; ++u)
      if (__builtin_add_overflow(out.walk_count, v[u], &out.walk_count)) {
        out.saturated = true;
        break;
      }

  out.bound = static_cast<double>(n) * static_cast<double>(n) *
              std::pow(out.eigen.value, k);
  // The eigenvalue carries a 1e-8 relative tolerance that compounds k times.
  const double slack = 1.0 + 1e-6 * std::max(1, k);
  out.holds = !out.saturated &&
              static_cast<double>(out.walk_count) <= out.bound * slack + 1e-9;
  return out;
}

}  // namespace hypa
