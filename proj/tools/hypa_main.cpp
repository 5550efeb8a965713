// Command line front end: every subcommand is a thin wrapper over the
// library. All randomized commands take an explicit seed and produce
// byte-identical output for identical inputs.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypa/corpus.hpp"
#include "hypa/debruijn.hpp"
#include "hypa/eval.hpp"
#include "hypa/export.hpp"
#include "hypa/fbad.hpp"
#include "hypa/groundtruth.hpp"
#include "hypa/hypa.hpp"
#include "hypa/stats.hpp"
#include "hypa/synth.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output_file(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

// Most commands stream their result to stdout unless -o names a file.
void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out = open_output_file(path);
  fn(out);
}

hypa::PathCorpus load_corpus(const std::string& path) {
  try {
    return hypa::PathCorpus::parse_file(path);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const hypa::ParseError*>(&e) != nullptr) throw;
    throw IoError(e.what());
  }
}

struct ScoreArgs {
  std::string input;
  std::string graph_file;
  std::string output;
  int k = 2;
  double alpha = 0.01;
  double tolerance = -1.0;
  int max_iterations = 5000;
};

void add_score_options(CLI::App* cmd, ScoreArgs& args) {
  cmd->add_option("input", args.input, "path corpus file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("-k,--order", args.k, "detection order")
      ->required()
      ->check(CLI::Range(1, 64));
  cmd->add_option("-a,--alpha", args.alpha, "significance threshold")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
      ->capture_default_str();
  cmd->add_option("--tolerance", args.tolerance,
                  "fit tolerance (negative = scale default)");
  cmd->add_option("--max-iterations", args.max_iterations,
                  "fit iteration cap")
      ->check(CLI::Range(0, 1000000))
      ->capture_default_str();
  cmd->add_option("--graph", args.graph_file,
                  "explicit first-order edge list (source,target[,weight])")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", args.output, "output file (default stdout)");
}

hypa::HypaResult run_scoring(const ScoreArgs& args, int threads,
                             hypa::PathCorpus& corpus) {
  corpus = load_corpus(args.input);
  hypa::FirstOrderGraph explicit_graph;
  hypa::HypaOptions opt;
  opt.tolerance = args.tolerance;
  opt.max_iterations = args.max_iterations;
  opt.threads = threads;
  if (!args.graph_file.empty()) {
    std::ifstream in(args.graph_file);
    if (!in) throw IoError("cannot open '" + args.graph_file + "'");
    explicit_graph = hypa::parse_edge_list(in, corpus);
    opt.first_order = &explicit_graph;
    return hypa::compute_hypa(corpus, args.k, opt);
  }
  return hypa::compute_hypa(corpus, args.k, opt);
}

std::vector<double> parse_fraction_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double f = 0.0;
    try {
      f = std::stod(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--fractions: bad number '" + item + "'");
    }
    if (f <= 0.0 || f > 1.0)
      throw CLI::ValidationError("--fractions entries must be in (0, 1]");
    out.push_back(f);
  }
  if (out.empty()) throw CLI::ValidationError("--fractions is empty");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Over- and under-represented path detection on k-th order graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file");
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for scoring")
      ->envname("HYPA_THREADS")
      ->check(CLI::Range(1, 256));

  // score: every candidate edge with capacity, score and label
  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "score all candidate edges");
  add_score_options(score, score_args);

  // detect: only the anomalies
  ScoreArgs detect_args;
  auto* detect = app.add_subcommand("detect", "list anomalous edges only");
  add_score_options(detect, detect_args);

  // fbad: frequency baseline
  ScoreArgs fbad_args;
  fbad_args.alpha = 1.0;
  auto* fbad_cmd =
      app.add_subcommand("fbad", "frequency-band baseline labels");
  fbad_cmd->add_option("input", fbad_args.input, "path corpus file")
      ->required()
      ->check(CLI::ExistingFile);
  fbad_cmd->add_option("-k,--order", fbad_args.k, "detection order")
      ->required()
      ->check(CLI::Range(1, 64));
  fbad_cmd
      ->add_option("-a,--alpha", fbad_args.alpha,
                   "band width in standard deviations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  fbad_cmd->add_option("-o,--output", fbad_args.output,
                       "output file (default stdout)");

  // synth
  struct {
    int n = 50;
    double p = 0.05;
    double f_anom = 0.2;
    int l = 3;
    int walks = 5000;
    int length = 10;
    std::uint64_t seed = 1;
    std::size_t enum_cap = 1'000'000;
    std::string output;
    std::string manifest;
  } synth_args;
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  synth->add_option("-n,--nodes", synth_args.n)->capture_default_str();
  synth->add_option("-p,--edge-prob", synth_args.p)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("-f,--f-anom", synth_args.f_anom)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("-l,--anomaly-length", synth_args.l)
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  synth->add_option("--walks", synth_args.walks)->capture_default_str();
  synth->add_option("--length", synth_args.length)->capture_default_str();
  synth->add_option("--seed", synth_args.seed)->capture_default_str();
  synth->add_option("--enum-cap", synth_args.enum_cap)->capture_default_str();
  synth->add_option("-o,--output", synth_args.output,
                    "corpus file (default stdout)");
  synth->add_option("--manifest", synth_args.manifest,
                    "write planted anomalous walks here");

  // groundtruth
  struct {
    std::string input;
    std::string output;
    int k = 2;
    double alpha = 0.01;
    int samples = 10;
    std::uint64_t seed = 1;
    std::string estimator = "midpoint";
  } gt_args;
  auto* gt = app.add_subcommand("groundtruth",
                                "simulation-based labels via randomization");
  gt->add_option("input", gt_args.input)->required()->check(
      CLI::ExistingFile);
  gt->add_option("-k,--order", gt_args.k)
      ->required()
      ->check(CLI::Range(2, 64));
  gt->add_option("-a,--alpha", gt_args.alpha)
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
      ->capture_default_str();
  gt->add_option("--samples", gt_args.samples)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gt->add_option("--seed", gt_args.seed)->capture_default_str();
  gt->add_option("--estimator", gt_args.estimator)
      ->check(CLI::IsMember({"midpoint", "categorical"}))
      ->capture_default_str();
  gt->add_option("-o,--output", gt_args.output);

  // eval
  struct {
    std::string protocol = "synthetic";
    std::string input;
    std::string coords;
    std::string output;
    std::string summary;
    hypa::ExperimentConfig config;
    int k = 2;
    double alpha = 0.01;
  } eval_args;
  auto* eval = app.add_subcommand("eval", "evaluation protocols");
  eval->add_option("--protocol", eval_args.protocol)
      ->check(CLI::IsMember({"synthetic", "fig3", "geo", "motifs"}))
      ->capture_default_str();
  eval->add_option("--input", eval_args.input)->check(CLI::ExistingFile);
  eval->add_option("--coords", eval_args.coords)->check(CLI::ExistingFile);
  eval->add_option("-k,--order", eval_args.k)->check(CLI::Range(1, 64));
  eval->add_option("-a,--alpha", eval_args.alpha)
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
      ->capture_default_str();
  eval->add_option("-n,--nodes", eval_args.config.n)->capture_default_str();
  eval->add_option("-p,--edge-prob", eval_args.config.p)
      ->capture_default_str();
  eval->add_option("-f,--f-anom", eval_args.config.f_anom)
      ->capture_default_str();
  eval->add_option("--walks", eval_args.config.walks)->capture_default_str();
  eval->add_option("--length", eval_args.config.walk_length)
      ->capture_default_str();
  eval->add_option("--reps", eval_args.config.reps)->capture_default_str();
  eval->add_option("--seed", eval_args.config.seed)->capture_default_str();
  eval->add_option("--l-values", eval_args.config.l_values)
      ->delimiter(',');
  eval->add_option("--k-values", eval_args.config.k_values)
      ->delimiter(',');
  eval->add_option("-o,--output", eval_args.output,
                   "per-repetition cells (default stdout)");
  eval->add_option("--summary", eval_args.summary,
                   "aggregated means + standard errors");

  // export
  struct {
    std::string input;
    std::string output;
    std::string format = "dot";
    std::string filter = "all";
    int k = 2;
    double alpha = 0.01;
  } export_args;
  auto* exp = app.add_subcommand("export", "graph and anomaly export");
  exp->add_option("input", export_args.input)
      ->required()
      ->check(CLI::ExistingFile);
  exp->add_option("-k,--order", export_args.k)
      ->required()
      ->check(CLI::Range(1, 64));
  exp->add_option("-a,--alpha", export_args.alpha)
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
      ->capture_default_str();
  exp->add_option("--format", export_args.format)
      ->check(CLI::IsMember({"dot", "csv"}))
      ->capture_default_str();
  exp->add_option("--filter", export_args.filter)
      ->check(CLI::IsMember({"all", "over", "under", "anomalies"}))
      ->capture_default_str();
  exp->add_option("-o,--output", export_args.output);

  // bench
  struct {
    std::string input;
    std::string output;
    int k_from = 2;
    int k_to = 2;
    std::string fractions = "1";
    int reps = 10;
    std::uint64_t seed = 1;
  } bench_args;
  auto* bench = app.add_subcommand("bench", "wall-clock scaling measurements");
  bench->add_option("input", bench_args.input)
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--k-from", bench_args.k_from)
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  bench->add_option("--k-to", bench_args.k_to)
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  bench->add_option("--fractions", bench_args.fractions,
                    "comma list of corpus fractions, e.g. 0.125,0.25,0.5,1")
      ->capture_default_str();
  bench->add_option("--reps", bench_args.reps)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed)->capture_default_str();
  bench->add_option("-o,--output", bench_args.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or the help text
    return code == 0 ? 0 : 2;
  }

  if (score->parsed() || detect->parsed()) {
    const ScoreArgs& args = score->parsed() ? score_args : detect_args;
    hypa::PathCorpus corpus;
    hypa::HypaResult res = run_scoring(args, threads, corpus);
    hypa::classify(res.scores, args.alpha);
    if (detect->parsed()) {
      std::erase_if(res.scores.rows, [](const hypa::ScoreRow& row) {
        return row.label != hypa::Label::over &&
               row.label != hypa::Label::under;
      });
    }
    with_output(args.output, [&](std::ostream& out) {
      hypa::write_score_csv(out, res.scores, res.graph, corpus.dictionary());
    });
    return 0;
  }

  if (fbad_cmd->parsed()) {
    const hypa::PathCorpus corpus = load_corpus(fbad_args.input);
    const hypa::FbadResult res =
        hypa::fbad_detect(corpus, fbad_args.k, fbad_args.alpha);
    const hypa::KOrderGraph g = hypa::build_korder(corpus, fbad_args.k);
    with_output(fbad_args.output, [&](std::ostream& out) {
      hypa::write_fbad_csv(out, res, g, corpus.dictionary());
    });
    return 0;
  }

  if (synth->parsed()) {
    const hypa::SyntheticModel model =
        hypa::synth_model(synth_args.n, synth_args.p, synth_args.f_anom,
                          synth_args.l, synth_args.seed, synth_args.enum_cap);
    const hypa::PathCorpus corpus = hypa::generate_corpus(
        model, synth_args.walks, synth_args.length,
        hypa::Rng::derive(synth_args.seed, 1));
    with_output(synth_args.output,
                [&](std::ostream& out) { corpus.write(out); });
    if (!synth_args.manifest.empty()) {
      std::ofstream mf = open_output_file(synth_args.manifest);
      hypa::write_manifest(mf, model);
    }
    return 0;
  }

  if (gt->parsed()) {
    const hypa::PathCorpus corpus = load_corpus(gt_args.input);
    const hypa::CdfEstimator est = gt_args.estimator == "midpoint"
                                       ? hypa::CdfEstimator::midpoint
                                       : hypa::CdfEstimator::categorical;
    const hypa::GroundTruthResult res = hypa::ground_truth_labels(
        corpus, gt_args.k, gt_args.alpha, gt_args.samples, gt_args.seed, est);
    const hypa::KOrderGraph g = hypa::build_korder(corpus, gt_args.k);
    with_output(gt_args.output, [&](std::ostream& out) {
      hypa::write_groundtruth_csv(out, res, g, corpus.dictionary());
    });
    return 0;
  }

  if (eval->parsed()) {
    if (eval_args.protocol == "synthetic" || eval_args.protocol == "fig3") {
      eval_args.config.threads = threads;
      const auto cells = hypa::run_synthetic_experiment(eval_args.config);
      with_output(eval_args.output, [&](std::ostream& out) {
        hypa::write_experiment_cells(out, cells);
      });
      if (!eval_args.summary.empty()) {
        const auto rows = hypa::summarize_experiment(cells);
        std::ofstream out = open_output_file(eval_args.summary);
        hypa::write_experiment_summary(out, rows);
      }
      return 0;
    }
    if (eval_args.input.empty())
      throw CLI::ValidationError("--input is required for this protocol");
    const hypa::PathCorpus corpus = load_corpus(eval_args.input);
    hypa::HypaOptions opt;
    opt.threads = threads;
    if (eval_args.protocol == "motifs") {
      const hypa::HypaResult res = hypa::compute_hypa(corpus, 2, opt);
      const auto buckets =
          hypa::motif_distribution(res.scores, res.graph, eval_args.alpha);
      with_output(eval_args.output, [&](std::ostream& out) {
        hypa::write_motifs_csv(out, buckets);
      });
      return 0;
    }
    // geo
    if (eval_args.coords.empty())
      throw CLI::ValidationError("--coords is required for --protocol geo");
    hypa::HypaResult res = hypa::compute_hypa(corpus, eval_args.k, opt);
    hypa::classify(res.scores, eval_args.alpha);
    std::ifstream cf(eval_args.coords);
    if (!cf) throw IoError("cannot open '" + eval_args.coords + "'");
    const hypa::NodeCoordinates coords =
        hypa::parse_coordinates(cf, corpus.dictionary());
    const hypa::GeoStats stats =
        hypa::geo_distance_stats(res.scores, res.graph, coords);
    with_output(eval_args.output, [&](std::ostream& out) {
      hypa::write_geo_csv(out, stats);
    });
    return 0;
  }

  if (exp->parsed()) {
    ScoreArgs args;
    args.input = export_args.input;
    args.k = export_args.k;
    hypa::PathCorpus corpus;
    hypa::HypaResult res = run_scoring(args, threads, corpus);
    hypa::classify(res.scores, export_args.alpha);
    const hypa::EdgeFilter filter =
        export_args.filter == "over"
            ? hypa::EdgeFilter::over
            : export_args.filter == "under"
                  ? hypa::EdgeFilter::under
                  : export_args.filter == "anomalies"
                        ? hypa::EdgeFilter::anomalies
                        : hypa::EdgeFilter::all;
    with_output(export_args.output, [&](std::ostream& out) {
      if (export_args.format == "dot") {
        hypa::write_dot(out, res.scores, res.graph, corpus.dictionary(),
                        filter);
      } else {
        hypa::ScoreTable table = res.scores;
        std::erase_if(table.rows, [&](const hypa::ScoreRow& row) {
          return filter != hypa::EdgeFilter::all &&
                 !((filter == hypa::EdgeFilter::over &&
                    row.label == hypa::Label::over) ||
                   (filter == hypa::EdgeFilter::under &&
                    row.label == hypa::Label::under) ||
                   (filter == hypa::EdgeFilter::anomalies &&
                    (row.label == hypa::Label::over ||
                     row.label == hypa::Label::under)));
        });
        hypa::write_score_csv(out, table, res.graph, corpus.dictionary());
      }
    });
    return 0;
  }

  if (bench->parsed()) {
    const hypa::PathCorpus corpus = load_corpus(bench_args.input);
    const std::vector<double> fractions =
        parse_fraction_list(bench_args.fractions);
    if (bench_args.k_to < bench_args.k_from)
      throw CLI::ValidationError("--k-to must be >= --k-from");
    std::vector<hypa::BenchRow> rows;
    for (int k = bench_args.k_from; k <= bench_args.k_to; ++k) {
      for (const double frac : fractions) {
        const hypa::PathCorpus sub =
            frac >= 1.0 ? corpus
                        : corpus.subsample_paths(frac, bench_args.seed);
        std::vector<double> secs;
        for (int r = 0; r < bench_args.reps; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          hypa::HypaOptions opt;
          opt.threads = threads;
          const hypa::HypaResult res = hypa::compute_hypa(sub, k, opt);
          const auto t1 = std::chrono::steady_clock::now();
          (void)res;
          secs.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        double mean = 0.0;
        for (const double s : secs) mean += s;
        mean /= static_cast<double>(secs.size());
        double ss = 0.0;
        for (const double s : secs) ss += (s - mean) * (s - mean);
        const double sd = secs.size() > 1
                              ? std::sqrt(ss / (secs.size() - 1.0))
                              : 0.0;
        rows.push_back({k, sub.path_count(), sub.node_traversals(), mean, sd});
      }
    }
    with_output(bench_args.output, [&](std::ostream& out) {
      hypa::write_bench_csv(out, rows);
    });
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Validation raised after the parse step proper.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hypa::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
