#include "hypa/export.hpp"

#include <cstdio>
#include <ostream>

namespace hypa {

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_score_csv(std::ostream& out, const ScoreTable& table,
                     const KOrderGraph& g, const NodeDictionary& dict) {
  out << "source,target,frequency,xi,hypa,label\n";
  for (const ScoreRow& row : table.rows)
    out << g.gram_label(row.source, dict) << ','
        << g.gram_label(row.target, dict) << ',' << row.freq << ','
        << format_g12(row.xi) << ',' << format_g12(row.score) << ','
        << label_name(row.label) << '\n';
}

void write_fbad_csv(std::ostream& out, const FbadResult& res,
                    const KOrderGraph& g, const NodeDictionary& dict) {
  out << "source,target,frequency,zscore,label\n";
  for (const FbadRow& row : res.rows)
    out << g.gram_label(row.source, dict) << ','
        << g.gram_label(row.target, dict) << ',' << row.freq << ','
        << format_g12(row.zscore) << ',' << label_name(row.label) << '\n';
}

void write_groundtruth_csv(std::ostream& out, const GroundTruthResult& res,
                           const KOrderGraph& g, const NodeDictionary& dict) {
  out << "source,target,frequency,cdf,label\n";
  for (const GroundTruthRow& row : res.rows)
    out << g.gram_label(row.source, dict) << ','
        << g.gram_label(row.target, dict) << ',' << row.freq << ','
        << format_g12(row.cdf) << ',' << label_name(row.label) << '\n';
}

void write_edges_csv(std::ostream& out, const KOrderGraph& g,
                     const NodeDictionary& dict) {
  out << "source,target,frequency\n";
  for (std::size_t v = 0; v < g.node_count(); ++v)
    for (std::size_t e = g.edge_row_ptr()[v]; e < g.edge_row_ptr()[v + 1];
         ++e)
      out << g.gram_label(static_cast<GramId>(v), dict) << ','
          << g.gram_label(g.edge_target()[e], dict) << ','
          << g.edge_weight()[e] << '\n';
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

bool filter_keeps(EdgeFilter filter, Label label) {
  switch (filter) {
    case EdgeFilter::all:
      return true;
    case EdgeFilter::over:
      return label == Label::over;
    case EdgeFilter::under:
      return label == Label::under;
    case EdgeFilter::anomalies:
      return label == Label::over || label == Label::under;
  }
  return false;
}

}  // namespace

void write_dot(std::ostream& out, const ScoreTable& table,
               const KOrderGraph& g, const NodeDictionary& dict,
               EdgeFilter filter) {
  out << "digraph korder {\n";
  for (const ScoreRow& row : table.rows) {
    if (!filter_keeps(filter, row.label)) continue;
    out << "  " << dot_quote(g.gram_label(row.source, dict)) << " -> "
        << dot_quote(g.gram_label(row.target, dict))
        << " [weight=" << row.freq << ", hypa=" << format_g12(row.score)
        << ", label=" << label_name(row.label) << "];\n";
  }
  out << "}\n";
}

void write_experiment_cells(std::ostream& out,
                            std::span<const ExperimentCell> cells) {
  out << "l,k,rep,method,auc\n";
  for (const ExperimentCell& c : cells)
    out << c.l << ',' << c.k << ',' << c.rep << ',' << c.method << ','
        << format_g12(c.auc) << '\n';
}

void write_experiment_summary(std::ostream& out,
                              std::span<const ExperimentSummaryRow> rows) {
  out << "l,k,method,mean_auc,stderr\n";
  for (const ExperimentSummaryRow& r : rows)
    out << r.l << ',' << r.k << ',' << r.method << ','
        << format_g12(r.mean_auc) << ',' << format_g12(r.stderr_auc) << '\n';
}

void write_motifs_csv(std::ostream& out,
                      std::span<const MotifBucket> buckets) {
  out << "class,over,under\n";
  for (const MotifBucket& b : buckets)
    out << b.cls << ',' << b.over << ',' << b.under << '\n';
}

void write_geo_csv(std::ostream& out, const GeoStats& stats) {
  out << "class,median_km,p_value\n";
  out << "over," << format_g12(stats.median_over_km) << ','
      << format_g12(stats.p_value) << '\n';
  out << "under," << format_g12(stats.median_under_km) << ','
      << format_g12(stats.p_value) << '\n';
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "k,n_paths,N,mean_seconds,std_seconds\n";
  for (const BenchRow& r : rows)
    out << r.k << ',' << r.n_paths << ',' << r.traversals << ','
        << format_g12(r.mean_seconds) << ',' << format_g12(r.std_seconds)
        << '\n';
}

}  // namespace hypa
