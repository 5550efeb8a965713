#include "hypa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "hypa/corpus.hpp"
#include "hypa/fbad.hpp"
#include "hypa/hypa.hpp"
#include "hypa/synth.hpp"

namespace hypa {

double anomaly_strength(double score) {
  if (!(score >= 0.0) || score > 1.0)
    throw std::invalid_argument("score must be in [0, 1]");
  return 2.0 * std::abs(score - 0.5);
}

RocResult roc_auc(std::span<const double> strength,
                  std::span<const std::uint8_t> truth) {
  if (strength.size() != truth.size())
    throw std::invalid_argument("strength/truth size mismatch");
  Count pos = 0, neg = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (std::isnan(strength[i]))
      throw std::invalid_argument("NaN ranking statistic");
    truth[i] ? ++pos : ++neg;
  }
  if (pos == 0 || neg == 0)
    throw std::invalid_argument("need at least one positive and one negative");

  std::vector<std::size_t> order(strength.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return strength[a] > strength[b];
  });

  RocResult res;
  res.points.push_back({0.0, 0.0});
  // 2 * area in units of 1 / (2 * pos * neg), kept integral so the result
  // equals pairwise counting bit for bit.
  Count twice_area = 0;
  Count cp = 0, cn = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    Count dp = 0, dn = 0;
    while (j < order.size() && strength[order[j]] == strength[order[i]]) {
      truth[order[j]] ? ++dp : ++dn;
      ++j;
    }
    twice_area += dn * (2 * cp + dp);
    cp += dp;
    cn += dn;
    res.points.push_back({static_cast<double>(cn) / static_cast<double>(neg),
                          static_cast<double>(cp) / static_cast<double>(pos)});
    i = j;
  }
  res.auc = static_cast<double>(twice_area) /
            (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return res;
}

namespace {

struct WindowSet {
  std::unordered_set<std::vector<NodeId>, SeqHash> set;
  bool contains(std::span<const NodeId> w) const {
    return set.count(std::vector<NodeId>(w.begin(), w.end())) > 0;
  }
};

}  // namespace

std::vector<std::uint8_t> cross_order_truth(
    const std::vector<std::vector<NodeId>>& anomalous,
    const std::vector<std::vector<NodeId>>& sequences) {
  // Group marked walks by length; for a candidate of length L, matches are
  // either an L-window of a longer (or equal) walk, or a whole shorter walk
  // sitting inside the candidate.
  std::map<std::size_t, WindowSet> whole_by_len;
  for (const auto& a : anomalous)
    whole_by_len[a.size()].set.insert(a);

  std::map<std::size_t, WindowSet> windows_by_len;  // built on demand
  const auto windows_of_len = [&](std::size_t len) -> const WindowSet& {
    auto [it, fresh] = windows_by_len.try_emplace(len);
    if (fresh)
      for (const auto& a : anomalous)
        for (std::size_t i = 0; i + len <= a.size(); ++i)
          it->second.set.insert(
              std::vector<NodeId>(a.begin() + i, a.begin() + i + len));
    return it->second;
  };

  std::vector<std::uint8_t> truth(sequences.size(), 0);
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    if (windows_of_len(seq.size()).contains(seq)) {
      truth[s] = 1;
      continue;
    }
    for (const auto& [len, whole] : whole_by_len) {
      if (len >= seq.size()) break;
      for (std::size_t i = 0; i + len <= seq.size() && !truth[s]; ++i)
        if (whole.contains({seq.data() + i, len})) truth[s] = 1;
      if (truth[s]) break;
    }
  }
  return truth;
}

namespace {

// AUC of one method on one corpus, NaN when the truth has only one class.
double safe_auc(std::span<const double> strength,
                std::span<const std::uint8_t> truth) {
  bool has_pos = false, has_neg = false;
  for (const std::uint8_t t : truth) (t ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) return std::nan("");
  return roc_auc(strength, truth).auc;
}

}  // namespace

std::vector<ExperimentCell> run_synthetic_experiment(
    const ExperimentConfig& config) {
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
  std::vector<ExperimentCell> cells;
  for (int rep = 0; rep < config.reps; ++rep) {
    for (const int l : config.l_values) {
      const std::uint64_t model_seed = Rng::derive(
          config.seed, static_cast<std::uint64_t>(rep) * 1000 + l);
      const SyntheticModel model =
          synth_model(config.n, config.p, config.f_anom, l, model_seed);
      const PathCorpus corpus = generate_corpus(
          model, config.walks, config.walk_length, Rng::derive(model_seed, 1));

      for (const int k : config.k_values) {
        HypaOptions opt;
        opt.threads = config.threads;
        const HypaResult res = compute_hypa(corpus, k, opt);

        // Detector: observed rows ranked by anomaly strength. Possible but
        // untraversed candidates are skipped so both methods rank the same
        // population of paths that actually occur in the data.
        std::vector<double> strength;
        std::vector<std::vector<NodeId>> seqs;
        for (const ScoreRow& row : res.scores.rows) {
          if (row.label == Label::unscored || row.freq == 0) continue;
          strength.push_back(anomaly_strength(row.score));
          seqs.push_back(edge_sequence(res.graph, row.source, row.target));
        }
        const auto truth = cross_order_truth(model.anomalous, seqs);
        cells.push_back(
            {l, k, rep, "hypa", safe_auc(strength, truth)});

        // Baseline: observed edges ranked by |z|.
        const FbadResult fb = fbad_score(res.graph, 0.0);
        std::vector<double> fb_strength;
        std::vector<std::vector<NodeId>> fb_seqs;
        for (const FbadRow& row : fb.rows) {
          fb_strength.push_back(std::abs(row.zscore));
          fb_seqs.push_back(edge_sequence(res.graph, row.source, row.target));
        }
        const auto fb_truth = cross_order_truth(model.anomalous, fb_seqs);
        cells.push_back(
            {l, k, rep, "fbad", safe_auc(fb_strength, fb_truth)});
      }
    }
  }
  return cells;
}

std::vector<ExperimentSummaryRow> summarize_experiment(
    std::span<const ExperimentCell> cells) {
  std::map<std::tuple<int, int, std::string>, std::vector<double>> groups;
  for (const ExperimentCell& c : cells)
    if (!std::isnan(c.auc))
      groups[{c.l, c.k, c.method}].push_back(c.auc);

  std::vector<ExperimentSummaryRow> rows;
  for (const auto& [key, aucs] : groups) {
    ExperimentSummaryRow row;
    row.l = std::get<0>(key);
    row.k = std::get<1>(key);
    row.method = std::get<2>(key);
    row.reps = static_cast<int>(aucs.size());
    const double n = static_cast<double>(aucs.size());
    row.mean_auc = std::accumulate(aucs.begin(), aucs.end(), 0.0) / n;
    if (aucs.size() > 1) {
      double ss = 0.0;
      for (const double a : aucs) ss += (a - row.mean_auc) * (a - row.mean_auc);
      row.stderr_auc = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hypa
