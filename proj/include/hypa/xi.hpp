#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "hypa/debruijn.hpp"
#include "hypa/types.hpp"

namespace hypa {

// Sparse capacity matrix over the candidate edges of a k-order graph. Row v
// holds the capacities Xi_vw that the null model draws against. Seeded with
// the degree outer product f_out(v) * f_in(w); `initial_total` keeps the
// pre-restriction mass m^2 (the value the full outer product would carry),
// which the degree projection below needs as its reference scale.
struct XiMatrix {
  int k = 0;
  std::size_t node_count = 0;
  Count m = 0;
  double initial_total = 0.0;  // mass before restriction to candidates
  double total = 0.0;          // current sum over stored entries

  std::vector<std::size_t> row_ptr;
  std::vector<GramId> col;
  std::vector<Count> freq;     // observed frequency per entry
  std::vector<double> value;   // capacity per entry

  std::vector<double> out_target;  // observed f_out per node
  std::vector<double> in_target;   // observed f_in per node

  // Fit diagnostics.
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  double max_total_drift = 0.0;  // worst per-iteration relative change of total

  std::size_t size() const { return col.size(); }
};

XiMatrix init_xi(const KOrderGraph& g, const PossibleEdges& candidates);

// Degrees the hypergeometric ensemble would produce in expectation when m
// draws are taken from the current capacities: column/row sums rescaled by
// (initial_total / total) / m relative to... concretely
//   expected_in(w)  = colsum(w) / m * initial_total / total,
//   expected_out(v) = rowsum(v) / m * initial_total / total.
// Invariant under uniform rescaling of the capacities.
struct ExpectedDegrees {
  std::vector<double> out;
  std::vector<double> in;
};
ExpectedDegrees expected_degrees(const XiMatrix& xi);

struct FitOptions {
  // Negative means the default 1e-2 * m / node_count (degree-scale
  // relative).
  double tolerance = -1.0;
  int max_iterations = 5000;
};

double default_fit_tolerance(const XiMatrix& xi);

// Alternating degree corrections: each pass rescales columns then rows so
// expected degrees match observed ones, until
//   rmse(out_target, expected_out) + rmse(in_target, expected_in) <= tolerance
// measured on the matrix as returned (root-mean-square over nodes). The
// matrix total is preserved by each half step up to rounding; the worst
// per-iteration drift lands in max_total_drift. A converged initial matrix
// records 0 iterations. Throws InfeasibleError when a node has observed
// degree > 0 but its candidate row or column carries no mass.
void fit_xi(XiMatrix& xi, const FitOptions& options = {});

}  // namespace hypa
