// Acceptance gate: end-to-end checks of the detection pipeline against
// independent oracles and published behavior. Prints one line per criterion;
// exits nonzero when any of them fails. Pass criterion numbers as arguments
// to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hypa/corpus.hpp"
#include "hypa/debruijn.hpp"
#include "hypa/eval.hpp"
#include "hypa/fbad.hpp"
#include "hypa/groundtruth.hpp"
#include "hypa/hypa.hpp"
#include "hypa/hypergeom.hpp"
#include "hypa/rng.hpp"
#include "hypa/sampling.hpp"
#include "hypa/stats.hpp"
#include "hypa/synth.hpp"
#include "hypa/xi.hpp"
#include "oracles.hpp"

namespace {

using namespace hypa;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

// 1. Planted-anomaly recovery: mean AUC at the matching order clears 0.85
// for every anomaly length and beats the frequency baseline's best order by
// at least 0.05.
//
// Known shortfall, kept honest rather than tuned around: the generator plants
// anomalies by hijacking whole walks at marked start nodes, which inflates
// the in- and out-strengths of every gram along the marked path. The detector
// conditions on exactly those strengths, so for lengths >= 3 the fitted
// ensemble absorbs most of the planted signal (the marked continuation is
// often the only observed mass in its row and column) and the matched-order
// AUC plateaus near 0.6 at any anomaly fraction probed, while a raw frequency
// ranking sees the inflated counts directly. Only length-2 plants, whose
// competing continuations keep independent traffic, are recovered above 0.85
// (at anomaly fractions near 0.01).
Outcome synthetic_recovery() {
  ExperimentConfig cfg;  // 50 nodes, p=0.05, 10 reps, 5000 walks of length 10
  const auto cells = run_synthetic_experiment(cfg);
  const auto rows = summarize_experiment(cells);

  const auto mean_of = [&](int l, int k, const std::string& method) {
    for (const auto& r : rows)
      if (r.l == l && r.k == k && r.method == method) return r.mean_auc;
    return std::nan("");
  };

  Outcome out;
  out.pass = true;
  for (const int l : cfg.l_values) {
    const double matched = mean_of(l, l, "hypa");
    double fbad_best = -1.0;
    for (const int k : cfg.k_values) {
      const double f = mean_of(l, k, "fbad");
      if (!std::isnan(f)) fbad_best = std::max(fbad_best, f);
    }
    const bool ok = !std::isnan(matched) && matched >= 0.85 &&
                    fbad_best >= 0.0 && matched >= fbad_best + 0.05;
    out.pass = out.pass && ok;
    out.detail += "l=" + std::to_string(l) + " detector " + fmt(matched) +
                  " baseline best " + fmt(fbad_best) + "; ";
  }
  return out;
}

// 2. Hypergeometric marginal vs exact factorial evaluation on every integer
// parameter tuple with total capacity <= 60.
Outcome hypergeometric_oracle() {
  double worst_pmf = 0.0, worst_cdf = 0.0, worst_span = 0.0;
  long long tuples = 0;

  for (unsigned total = 1; total <= 60; ++total) {
    for (unsigned cap = 0; cap <= total; ++cap) {
      for (unsigned m = 0; m <= total; ++m) {
        ++tuples;
        const oracles::u128 denom = oracles::binom(total, m);
        double cdf_o = 0.0;
        double pmf_sum = 0.0;
        for (unsigned f = 0; f <= m; ++f) {
          const oracles::u128 ways = oracles::hyper_ways(cap, total, m, f);
          const double po =
              static_cast<double>(ways) / static_cast<double>(denom);
          const double pa = std::exp(
              hypergeom_logpmf(cap, total, m, f));
          if (ways == 0) {
            worst_pmf = std::max(worst_pmf, std::abs(pa));
          } else {
            worst_pmf = std::max(worst_pmf, std::abs(pa - po) / po);
          }
          pmf_sum += pa;
          cdf_o += po;
          const double ca = hypa_score(cap, total, m, f);
          if (cdf_o > 0.0)
            worst_cdf = std::max(worst_cdf, std::abs(ca - cdf_o) / cdf_o);
          else
            worst_cdf = std::max(worst_cdf, std::abs(ca));
        }
        worst_span = std::max(worst_span, std::abs(pmf_sum - 1.0));
        const Count hi = std::min<Count>(m, cap);
        worst_span =
            std::max(worst_span,
                     std::abs(hypa_score(cap, total, m, hi) - 1.0));
      }
    }
  }

  Outcome out;
  out.pass = worst_pmf <= 1e-9 && worst_cdf <= 1e-9 && worst_span <= 1e-9;
  std::ostringstream d;
  d.precision(2);
  d << std::scientific << tuples << " tuples, worst pmf rel err "
    << worst_pmf << ", cdf rel err " << worst_cdf << ", span err "
    << worst_span;
  out.detail = d.str();
  return out;
}

// 3. Monte Carlo concordance: drawing from the urn the capacities describe
// reproduces the analytic CDF at the observed frequency within 0.02.
Outcome monte_carlo_concordance() {
  struct Fixture {
    std::vector<double> values;
    Count m = 0;
    std::vector<Count> at;  // frequency to evaluate per edge
  };

  std::vector<Fixture> fixtures;
  // The 4-edge example fixture, integer capacities straight from the seed.
  {
    const PathCorpus corpus = oracles::toy_corpus();
    const KOrderGraph g = build_korder(corpus, 2);
    const XiMatrix xi = init_xi(g, possible_edges(g));
    Fixture fx;
    fx.values = xi.value;
    fx.m = xi.m;
    fx.at.assign(xi.freq.begin(), xi.freq.end());
    fixtures.push_back(std::move(fx));
  }
  fixtures.push_back({{1.0, 1.0}, 1, {0, 1}});
  fixtures.push_back({{3.0, 17.0, 80.0}, 25, {1, 4, 20}});
  fixtures.push_back({{10.0, 10.0, 10.0, 10.0}, 20, {5, 4, 6, 5}});
  fixtures.push_back({{50.0, 30.0, 20.0}, 35, {18, 10, 7}});
  fixtures.push_back({{40.0, 60.0}, 50, {20, 30}});

  double worst = 0.0;
  const int n_samples = 100000;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const Fixture& fx = fixtures[i];
    XiMatrix xi;
    xi.node_count = 1;
    xi.m = fx.m;
    xi.row_ptr = {0, fx.values.size()};
    xi.col.resize(fx.values.size());
    xi.freq.assign(fx.values.size(), 0);
    xi.value = fx.values;
    for (double v : fx.values) xi.total += v;
    xi.initial_total = xi.total;

    const EnsembleSamples samples =
        sample_ensemble(xi, fx.m, n_samples, 7000 + i);
    for (std::size_t e = 0; e < fx.values.size(); ++e) {
      const double emp = empirical_cdf(samples.per_edge[e], fx.at[e]);
      const double ana = hypa_score(fx.values[e], xi.total, fx.m, fx.at[e]);
      worst = std::max(worst, std::abs(emp - ana));
    }
  }

  Outcome out;
  out.pass = worst <= 0.02;
  out.detail = std::to_string(fixtures.size()) + " fixtures, " +
               std::to_string(n_samples) + " samples each, worst |emp-cdf| " +
               fmt(worst, 4);
  return out;
}

// 4. Capacity fitting restores both expected degree sequences within
// tolerance on random graphs, without leaking total mass.
Outcome degree_preservation() {
  int failures = 0;
  int worst_iters = 0;
  double worst_drift = 0.0;
  double worst_ratio = 0.0;  // recomputed residual / tolerance

  for (int i = 0; i < 50; ++i) {
    const int k = 2 + (i % 2);
    const int n = 10 + (i * 7) % 20;
    try {
      const SyntheticModel model =
          synth_model(n, 0.25, 0.0, 1, 1000 + i);
      const PathCorpus corpus =
          generate_corpus(model, 80 + (i * 13) % 120, 8, 2000 + i);
      const KOrderGraph g = build_korder(corpus, k);
      XiMatrix xi = init_xi(g, possible_edges(g));
      fit_xi(xi);
      const double tol = default_fit_tolerance(xi);

      // Recompute the end-state residual from scratch.
      const ExpectedDegrees expected = expected_degrees(xi);
      double so = 0.0, si = 0.0;
      const std::size_t nodes = xi.node_count;
      for (std::size_t v = 0; v < nodes; ++v) {
        so += (expected.out[v] - xi.out_target[v]) *
              (expected.out[v] - xi.out_target[v]);
        si += (expected.in[v] - xi.in_target[v]) *
              (expected.in[v] - xi.in_target[v]);
      }
      const double resid = std::sqrt(so / static_cast<double>(nodes)) +
                           std::sqrt(si / static_cast<double>(nodes));

      worst_iters = std::max(worst_iters, xi.iterations);
      worst_drift = std::max(worst_drift, xi.max_total_drift);
      worst_ratio = std::max(worst_ratio, resid / tol);
      if (!(xi.converged && xi.iterations <= 5000 && resid <= tol * 1.0001 &&
            xi.max_total_drift <= 1e-6))
        ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }

  Outcome out;
  out.pass = failures == 0;
  std::ostringstream d;
  d << failures << "/50 failures, max iterations " << worst_iters
    << ", worst residual/tolerance " << fmt(worst_ratio, 4)
    << ", worst total drift " << worst_drift;
  out.detail = d.str();
  return out;
}

// 5. On the 4-edge example the detector flags both directions correctly
// while the frequency baseline can never call the rare-but-expected edge
// over-represented.
Outcome toy_directions() {
  const PathCorpus corpus = oracles::toy_corpus();
  HypaResult res = compute_hypa(corpus, 2);
  classify(res.scores, 0.1);

  const KOrderGraph& g = res.graph;
  const auto gid = [&](std::string_view a, std::string_view b) {
    const NodeId ids[] = {*corpus.dictionary().find(a),
                          *corpus.dictionary().find(b)};
    return *g.find_gram(ids);
  };
  const auto label_of = [&](GramId s, GramId t) {
    for (const ScoreRow& row : res.scores.rows)
      if (row.source == s && row.target == t) return row.label;
    return Label::unscored;
  };

  const GramId ax = gid("A", "X"), bx = gid("B", "X");
  const GramId xc = gid("X", "C"), xd = gid("X", "D");
  bool ok = label_of(ax, xc) == Label::over &&
            label_of(bx, xd) == Label::over &&
            label_of(ax, xd) == Label::under &&
            label_of(bx, xc) == Label::under;

  // The baseline scores the A,X,C edge below the mean (30 vs 78.3), so no
  // band placement can mark it over-represented.
  bool baseline_never = true;
  for (const double alpha : {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const FbadResult fb = fbad_detect(corpus, 2, alpha);
    for (const FbadRow& row : fb.rows)
      if (row.source == ax && row.target == xc) {
        baseline_never = baseline_never && row.label != Label::over;
        if (alpha == 0.0) baseline_never = baseline_never && row.zscore < 0.0;
      }
  }

  Outcome out;
  out.pass = ok && baseline_never;
  out.detail = std::string("detector directions ") + (ok ? "ok" : "wrong") +
               ", baseline over-call " + (baseline_never ? "never" : "seen");
  return out;
}

// 6. Null calibration: corpora that really are pure (k-1)-order walks should
// have their edges labeled at rate 2 * alpha, within a 99% binomial interval.
// Measured on a dense complete graph (the most favorable mixing regime), with
// both labeling mechanisms: hypergeometric classification and the
// simulation-based labeler. Walk-sampled frequencies are under-dispersed
// relative to the urn ensemble (roughly by one minus the mean transition
// probability), and the simulation labeler estimates its transitions from
// the corpus it judges, which pulls the observed edge toward its replicas.
// Both effects are density-dependent but do not vanish, so the labeled
// fraction plateaus below 2 * alpha at every size probed; this check records
// that honestly rather than shrinking its sample until the interval covers
// the shortfall.
Outcome null_calibration() {
  const double alphas[] = {0.01, 0.05};
  const SyntheticModel model = synth_model(12, 1.0, 0.0, 1, 77);

  // Hypergeometric classification, pooled over four first-order corpora.
  Count det_lab[2] = {0, 0};
  Count det_tot[2] = {0, 0};
  for (int rep = 0; rep < 4; ++rep) {
    const PathCorpus c1 = generate_corpus(model, 40000, 10, 501 + rep);
    HypaResult r = compute_hypa(c1, 2);
    for (int a = 0; a < 2; ++a) {
      classify(r.scores, alphas[a]);
      for (const ScoreRow& row : r.scores.rows) {
        if (row.label == Label::unscored) continue;
        ++det_tot[a];
        if (row.label != Label::normal) ++det_lab[a];
      }
    }
  }

  // Simulation-based labels, pooled over two corpora.
  Count sim_lab[2] = {0, 0};
  Count sim_tot[2] = {0, 0};
  bool recount_ok = true;
  for (int rep = 0; rep < 2; ++rep) {
    const PathCorpus c1 = generate_corpus(model, 15000, 10, 601 + rep);
    const GroundTruthResult gt = ground_truth_labels(c1, 2, alphas[0], 250,
                                                     41 + rep);
    Count from_labels = 0;
    Count from_cdf = 0;
    for (const GroundTruthRow& row : gt.rows) {
      for (int a = 0; a < 2; ++a) {
        ++sim_tot[a];
        if (row.cdf >= 1.0 - alphas[a] || row.cdf < alphas[a]) ++sim_lab[a];
      }
      if (row.label != Label::normal) ++from_labels;
      if (row.cdf >= 1.0 - alphas[0] || row.cdf < alphas[0]) ++from_cdf;
    }
    // The cdf recount at the call's own alpha must agree with the labels.
    recount_ok = recount_ok && from_labels == from_cdf;
  }

  Outcome out;
  out.pass = recount_ok;
  const struct {
    const char* name;
    const Count* lab;
    const Count* tot;
  } sides[] = {{"detector", det_lab, det_tot}, {"simulation", sim_lab, sim_tot}};
  for (const auto& side : sides) {
    for (int a = 0; a < 2; ++a) {
      const double target = 2.0 * alphas[a];
      const double n = static_cast<double>(side.tot[a]);
      const double p_hat = static_cast<double>(side.lab[a]) / n;
      const double half = 2.576 * std::sqrt(target * (1.0 - target) / n);
      const bool ok = std::abs(p_hat - target) <= half;
      out.pass = out.pass && ok;
      out.detail += std::string(side.name) + " alpha " + fmt(alphas[a], 2) +
                    ": " + fmt(p_hat, 4) + " vs " + fmt(target, 2) + " +- " +
                    fmt(half, 4) + "; ";
    }
  }
  return out;
}

// 7. Exact walk counts stay under the spectral bound on random digraphs and
// reach the lattice maximum n^(k+1) on complete graphs with self loops.
Outcome walk_count_bound() {
  // Supercritical draws (mean degree >= 2.5) keep lambda1 >= 1; below that
  // regime random digraphs go acyclic and the spectral cap collapses to 0.
  Rng rng(31);
  int held = 0;
  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 30 + rng.uniform_below(31);
    const double lo = 2.5 / static_cast<double>(n);
    const double p = lo + (0.1 - lo) * rng.uniform01();
    const int k = 1 + static_cast<int>(rng.uniform_below(5));
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        if (rng.uniform01() < p) edges.emplace_back(u, v);
    const std::vector<Count> weights(edges.size(), 1);
    const FirstOrderGraph g = graph_from_edges(n, edges, weights);
    const PathCountBound b = path_count_bound_check(g, k);
    if (b.holds && !b.saturated) ++held;
    if (oracles::walk_count(g, k) ==
        static_cast<oracles::u128>(b.walk_count))
      ++exact;
  }

  bool full_ok = true;
  for (const std::size_t n : {2, 3, 5, 8}) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) edges.emplace_back(u, v);
    const std::vector<Count> weights(edges.size(), 1);
    const FirstOrderGraph g = graph_from_edges(n, edges, weights);
    for (int k = 1; k <= 5; ++k) {
      const PathCountBound b = path_count_bound_check(g, k);
      oracles::u128 want = 1;
      for (int i = 0; i <= k; ++i) want *= n;
      full_ok = full_ok && b.holds &&
                static_cast<oracles::u128>(b.walk_count) == want;
    }
  }

  Outcome out;
  out.pass = held == 100 && exact == 100 && full_ok;
  out.detail = "bound held " + std::to_string(held) + "/100, exact count " +
               std::to_string(exact) + "/100, complete graphs " +
               (full_ok ? "exact" : "off");
  return out;
}

// 8. Near-linear scaling: doubling the corpus roughly doubles the runtime of
// the k = 2 pipeline (log-log slope <= 1.2 across the largest doublings).
Outcome scaling_shape() {
  // Dense enough that walks never truncate: the full corpus holds 9e5 node
  // traversals, so the smallest eighth sits right at the 1e5 target.
  const SyntheticModel model = synth_model(200, 0.05, 0.1, 2, 4242);
  const PathCorpus base = generate_corpus(model, 100000, 8, 555);

  const double fractions[] = {0.125, 0.25, 0.5, 1.0};
  std::vector<double> seconds;
  std::vector<Count> sizes;
  std::size_t scored_rows = 0;
  for (const double frac : fractions) {
    const PathCorpus c = base.subsample_paths(frac, 99);
    sizes.push_back(c.node_traversals());
    compute_hypa(c, 2);  // warm caches and allocator
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 3; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const HypaResult res = compute_hypa(c, 2);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      scored_rows = res.scores.rows.size();
    }
    seconds.push_back(best);
  }

  const double s1 = std::log2(seconds[2] / seconds[1]);
  const double s2 = std::log2(seconds[3] / seconds[2]);

  Outcome out;
  out.pass = s1 <= 1.2 && s2 <= 1.2;
  std::ostringstream d;
  d << "N " << sizes[0] << ".." << sizes[3] << " traversals, "
    << scored_rows << " candidate edges at full size, times";
  for (const double s : seconds) d << ' ' << fmt(s, 3) << "s";
  d << ", slopes " << fmt(s1, 2) << ' ' << fmt(s2, 2);
  out.detail = d.str();
  return out;
}

// 9. Ranking statistics agree with brute-force counting: the ROC sweep
// equals pairwise comparison exactly, the rank-sum tail matches full
// enumeration.
Outcome rank_oracles() {
  Rng rng(606);
  int roc_exact = 0;
  const int roc_trials = 1000;
  for (int t = 0; t < roc_trials; ++t) {
    const std::size_t n = 2 + rng.uniform_below(50);
    std::vector<double> strength(n);
    std::vector<std::uint8_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (t % 3) {
        case 0: strength[i] = static_cast<double>(rng.uniform_below(4)); break;
        case 1: strength[i] = rng.uniform01(); break;
        default:
          strength[i] = static_cast<double>(rng.uniform_below(10)) / 4.0;
      }
      truth[i] = static_cast<std::uint8_t>(rng.uniform_below(2));
    }
    truth[0] = 0;
    truth[n - 1] = 1;
    if (roc_auc(strength, truth).auc == oracles::pairwise_auc(strength, truth))
      ++roc_exact;
  }

  double worst_mw = 0.0;
  const int mw_trials = 300;
  for (int t = 0; t < mw_trials; ++t) {
    const std::size_t na = 1 + rng.uniform_below(7);
    const std::size_t nb = 1 + rng.uniform_below(7);
    std::vector<double> pool(na + nb);
    for (std::size_t i = 0; i < pool.size(); ++i)
      pool[i] = static_cast<double>(i) + 0.25;
    for (std::size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[rng.uniform_below(i)]);
    const std::vector<double> a(pool.begin(), pool.begin() + na);
    const std::vector<double> b(pool.begin() + na, pool.end());
    const double got = mann_whitney_one_sided(a, b);
    const double want = oracles::mw_enumerated(a, b);
    worst_mw = std::max(worst_mw, std::abs(got - want));
  }

  Outcome out;
  out.pass = roc_exact == roc_trials && worst_mw <= 1e-9;
  std::ostringstream d;
  d << "roc exact " << roc_exact << "/" << roc_trials
    << ", rank-sum worst |diff| ";
  d.precision(2);
  d << std::scientific << worst_mw;
  out.detail = d.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "synthetic-recovery", synthetic_recovery},
      {2, "hypergeometric-oracle", hypergeometric_oracle},
      {3, "monte-carlo-concordance", monte_carlo_concordance},
      {4, "degree-preservation", degree_preservation},
      {5, "toy-directions", toy_directions},
      {6, "null-calibration", null_calibration},
      {7, "walk-count-bound", walk_count_bound},
      {8, "scaling-shape", scaling_shape},
      {9, "rank-oracles", rank_oracles},
  };

  std::vector<int> chosen;
  for (int i = 1; i < argc; ++i) chosen.push_back(std::atoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!chosen.empty() &&
        std::find(chosen.begin(), chosen.end(), c.id) == chosen.end())
      continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name
              << ": " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
