#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "hypa/eval.hpp"
#include "hypa/fbad.hpp"
#include "hypa/groundtruth.hpp"
#include "hypa/hypa.hpp"
#include "hypa/stats.hpp"

namespace hypa {

// Floats in CSV output carry 12 significant digits, enough to round-trip the
// decisions they encode while keeping files diffable.
std::string format_g12(double v);

// source,target,frequency,xi,hypa,label -- grams joined by '|'.
void write_score_csv(std::ostream& out, const ScoreTable& table,
                     const KOrderGraph& g, const NodeDictionary& dict);

// source,target,frequency,zscore,label
void write_fbad_csv(std::ostream& out, const FbadResult& res,
                    const KOrderGraph& g, const NodeDictionary& dict);

// source,target,frequency,cdf,label
void write_groundtruth_csv(std::ostream& out, const GroundTruthResult& res,
                           const KOrderGraph& g, const NodeDictionary& dict);

// source,target,frequency -- the observed k-order edges.
void write_edges_csv(std::ostream& out, const KOrderGraph& g,
                     const NodeDictionary& dict);

enum class EdgeFilter { all, over, under, anomalies };

// Graphviz digraph of the score table, optionally restricted by label.
void write_dot(std::ostream& out, const ScoreTable& table,
               const KOrderGraph& g, const NodeDictionary& dict,
               EdgeFilter filter);

// l,k,rep,method,auc
void write_experiment_cells(std::ostream& out,
                            std::span<const ExperimentCell> cells);

// l,k,method,mean_auc,stderr
void write_experiment_summary(std::ostream& out,
                              std::span<const ExperimentSummaryRow> rows);

// class,over,under
void write_motifs_csv(std::ostream& out, std::span<const MotifBucket> buckets);

// class,median_km,p_value
void write_geo_csv(std::ostream& out, const GeoStats& stats);

struct BenchRow {
  int k = 0;
  Count n_paths = 0;
  Count traversals = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

// k,n_paths,N,mean_seconds,std_seconds
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace hypa
