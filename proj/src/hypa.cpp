#include "hypa/hypa.hpp"

#include <thread>

#include "hypa/hypergeom.hpp"

namespace hypa {

std::string_view label_name(Label l) {
  switch (l) {
    case Label::normal:
      return "normal";
    case Label::over:
      return "over";
    case Label::under:
      return "under";
    case Label::unscored:
      return "unscored";
  }
  return "?";
}

ScoreTable score_edges(const XiMatrix& xi, int threads) {
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  ScoreTable table;
  table.k = xi.k;
  table.m = xi.m;
  table.xi_total = xi.total;
  table.rows.resize(xi.size());

  for (std::size_t v = 0; v < xi.node_count; ++v)
    for (std::size_t e = xi.row_ptr[v]; e < xi.row_ptr[v + 1]; ++e) {
      table.rows[e].source = static_cast<GramId>(v);
      table.rows[e].target = xi.col[e];
    }

  const auto score_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) {
      ScoreRow& row = table.rows[e];
      row.freq = xi.freq[e];
      row.xi = xi.value[e];
      if (xi.value[e] <= 0.0) {
        if (xi.freq[e] > 0)
          throw std::logic_error("observed edge with zero capacity");
        row.score = std::nan("");
        row.label = Label::unscored;
      } else {
        row.score = hypa_score(xi.value[e], xi.total, xi.m, xi.freq[e]);
        row.label = Label::normal;
      }
    }
  };

  const std::size_t n = table.rows.size();
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n ? n : 1);
  if (workers <= 1) {
    score_range(0, n);
    return table;
  }
  // Rows are independent and land in fixed slots, so the split is merely a
  // speedup: output is identical for any thread count.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        score_range(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return table;
}

HypaResult compute_hypa(const PathCorpus& corpus, int k,
                        const HypaOptions& options) {
  if (options.first_order != nullptr)
    validate_paths_in_graph(corpus, *options.first_order);

  HypaResult result{build_korder(corpus, k), {}, {}};

  // For k = 1 an external edge list widens the candidate set beyond the
  // observed edges; without one the induced topology adds nothing.
  const PossibleEdges candidates =
      possible_edges(result.graph, k == 1 ? options.first_order : nullptr);

  result.xi = init_xi(result.graph, candidates);
  FitOptions fit;
  fit.tolerance = options.tolerance;
  fit.max_iterations = options.max_iterations;
  fit_xi(result.xi, fit);

  result.scores = score_edges(result.xi, options.threads);
  return result;
}

void classify(ScoreTable& table, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must be in (0, 1]");
  table.alpha = alpha;
  for (ScoreRow& row : table.rows) {
    if (row.label == Label::unscored) continue;
    if (row.score < alpha)
      row.label = Label::under;
    else if (row.score > 1.0 - alpha)
      row.label = Label::over;
    else
      row.label = Label::normal;
  }
}

}  // namespace hypa
