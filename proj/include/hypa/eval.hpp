#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypa/types.hpp"

namespace hypa {

// Distance of a score from the uninformative center, in [0, 1]; rank
// statistic for "anomalous either way".
double anomaly_strength(double score);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;  // (0,0) up to (1,1), one per threshold
  double auc = 0.0;
};

// ROC by threshold sweep over the ranking statistic, trapezoid AUC. Tied
// statistics collapse into one point, which makes the AUC equal the pairwise
// statistic #(pos > neg) + 0.5 #(pos == neg) over |pos| * |neg|; the sum is
// carried in integers so the equality is exact. Throws when either class is
// empty or a statistic is NaN.
RocResult roc_auc(std::span<const double> strength,
                  std::span<const std::uint8_t> truth);

// truth[i] = 1 iff sequences[i] contains one of `anomalous` as a contiguous
// subsequence or is contained in one (equal lengths match iff equal).
std::vector<std::uint8_t> cross_order_truth(
    const std::vector<std::vector<NodeId>>& anomalous,
    const std::vector<std::vector<NodeId>>& sequences);

// Planted-anomaly recovery sweep: for every repetition and anomaly order l,
// one synthetic corpus; for every analysis order k, rank the observed edges
// by anomaly strength (detector) and |z| (frequency baseline) against the
// cross-order truth and record both AUCs.
struct ExperimentConfig {
  int n = 50;
  double p = 0.05;
  double f_anom = 0.2;
  std::vector<int> l_values{2, 3, 4, 5};
  std::vector<int> k_values{1, 2, 3, 4, 5};
  int reps = 10;
  int walks = 5000;
  int walk_length = 10;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ExperimentCell {
  int l = 0;
  int k = 0;
  int rep = 0;
  std::string method;  // "hypa" or "fbad"
  double auc = 0.0;    // NaN when the truth degenerated for this cell
};

struct ExperimentSummaryRow {
  int l = 0;
  int k = 0;
  std::string method;
  double mean_auc = 0.0;
  double stderr_auc = 0.0;
  int reps = 0;  // cells with a defined AUC
};

std::vector<ExperimentCell> run_synthetic_experiment(
    const ExperimentConfig& config);

std::vector<ExperimentSummaryRow> summarize_experiment(
    std::span<const ExperimentCell> cells);

}  // namespace hypa
