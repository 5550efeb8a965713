#include "hypa/xi.hpp"

#include <cmath>
#include <string>

#include "hypa/kernels.hpp"

namespace hypa {

XiMatrix init_xi(const KOrderGraph& g, const PossibleEdges& candidates) {
  XiMatrix xi;
  xi.k = g.order();
  xi.node_count = g.node_count();
  xi.m = g.total_weight();
  if (xi.m == 0)
    throw std::invalid_argument(
        "empty order-" + std::to_string(xi.k) + " graph: no subpath of " +
        "that length was observed");
  const double md = static_cast<double>(xi.m);
  xi.initial_total = md * md;

  xi.row_ptr = candidates.row_ptr;
  xi.col = candidates.target;
  xi.freq = candidates.freq;
  xi.value.resize(xi.col.size());

  xi.out_target.resize(xi.node_count);
  xi.in_target.resize(xi.node_count);
  for (std::size_t v = 0; v < xi.node_count; ++v) {
    xi.out_target[v] = static_cast<double>(g.out_weight(static_cast<GramId>(v)));
    xi.in_target[v] = static_cast<double>(g.in_weight(static_cast<GramId>(v)));
  }

  Count covered = 0;
  for (std::size_t v = 0; v < xi.node_count; ++v)
    for (std::size_t e = xi.row_ptr[v]; e < xi.row_ptr[v + 1]; ++e) {
      xi.value[e] = xi.out_target[v] * xi.in_target[xi.col[e]];
      covered += xi.freq[e];
    }
  if (covered != xi.m)
    throw std::logic_error("candidate edges do not cover the observed edges");

  xi.total = kernels::active_ops().sum(xi.value.data(), xi.value.size());
  return xi;
}

namespace {

double rmse(const double* a, const double* b, std::size_t n) {
  if (n == 0) return 0.0;
  const double ss = kernels::active_ops().sq_diff_sum(a, b, n);
  return std::sqrt(ss / static_cast<double>(n));
}

}  // namespace

ExpectedDegrees expected_degrees(const XiMatrix& xi) {
  const auto& ops = kernels::active_ops();
  const std::size_t n = xi.node_count;
  ExpectedDegrees deg;
  deg.out.assign(n, 0.0);
  deg.in.assign(n, 0.0);
  if (xi.total <= 0.0) return deg;
  const double scale = xi.initial_total / xi.total / static_cast<double>(xi.m);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t b = xi.row_ptr[v];
    deg.out[v] = ops.sum(xi.value.data() + b, xi.row_ptr[v + 1] - b) * scale;
  }
  for (std::size_t e = 0; e < xi.size(); ++e)
    deg.in[xi.col[e]] += xi.value[e];
  for (std::size_t v = 0; v < n; ++v) deg.in[v] *= scale;
  return deg;
}

double default_fit_tolerance(const XiMatrix& xi) {
  return 1e-2 * static_cast<double>(xi.m) /
         static_cast<double>(xi.node_count);
}

void fit_xi(XiMatrix& xi, const FitOptions& options) {
  if (options.max_iterations < 0)
    throw std::invalid_argument("max_iterations must be >= 0");
  const double tol =
      options.tolerance < 0.0 ? default_fit_tolerance(xi) : options.tolerance;
  const auto& ops = kernels::active_ops();
  const std::size_t n = xi.node_count;
  const double md = static_cast<double>(xi.m);

  std::vector<double> colsum(n), rowsum(n), factor(n);
  std::vector<double> expected_in(n), expected_out(n);

  const auto column_sums = [&] {
    std::fill(colsum.begin(), colsum.end(), 0.0);
    for (std::size_t e = 0; e < xi.size(); ++e)
      colsum[xi.col[e]] += xi.value[e];
  };
  const auto row_sums = [&] {
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t b = xi.row_ptr[v];
      rowsum[v] = ops.sum(xi.value.data() + b, xi.row_ptr[v + 1] - b);
    }
  };

  xi.max_total_drift = 0.0;
  xi.iterations = 0;

  // Residual of the matrix as it stands: how far the ensemble's expected
  // degrees sit from the observed ones. Needs colsum/rowsum of the current
  // values.
  const auto current_residual = [&] {
    const double scale = xi.initial_total / xi.total / md;
    for (std::size_t v = 0; v < n; ++v) {
      expected_in[v] = colsum[v] * scale;
      expected_out[v] = rowsum[v] * scale;
    }
    return rmse(xi.out_target.data(), expected_out.data(), n) +
           rmse(xi.in_target.data(), expected_in.data(), n);
  };

  // Already satisfied (e.g. nothing fell outside the candidate set)? Then
  // the seed matrix is the fit.
  column_sums();
  row_sums();
  xi.residual = current_residual();
  if (xi.residual <= tol) {
    xi.converged = true;
    return;
  }
  xi.converged = false;

  for (int it = 1; it <= options.max_iterations; ++it) {
    const double total_begin = xi.total;

    // Column step: pull expected in-degrees onto the observed ones. colsum
    // matches the current values here (maintained at the end of the loop).
    double scale = xi.initial_total / xi.total / md;
    for (std::size_t w = 0; w < n; ++w) {
      if (xi.in_target[w] > 0.0 && colsum[w] <= 0.0)
        throw InfeasibleError(
            "no candidate edge can supply in-degree of node " +
            std::to_string(w));
      factor[w] = xi.in_target[w] > 0.0
                      ? xi.in_target[w] / (colsum[w] * scale)
                      : 0.0;
    }
    ops.mul_indexed(xi.value.data(), xi.col.data(), xi.size(), factor.data());
    xi.total = ops.sum(xi.value.data(), xi.size());
    if (!(xi.total > 0.0))
      throw InfeasibleError("capacity matrix lost all mass");

    // Row step, symmetric.
    row_sums();
    scale = xi.initial_total / xi.total / md;
    for (std::size_t v = 0; v < n; ++v) {
      if (xi.out_target[v] > 0.0 && rowsum[v] <= 0.0)
        throw InfeasibleError(
            "no candidate edge can supply out-degree of node " +
            std::to_string(v));
      const double f = xi.out_target[v] > 0.0
                           ? xi.out_target[v] / (rowsum[v] * scale)
                           : 0.0;
      const std::size_t b = xi.row_ptr[v];
      ops.scale(xi.value.data() + b, xi.row_ptr[v + 1] - b, f);
    }
    xi.total = ops.sum(xi.value.data(), xi.size());
    if (!(xi.total > 0.0))
      throw InfeasibleError("capacity matrix lost all mass");

    // Measure the matrix actually left behind, not the pre-correction one.
    column_sums();
    row_sums();
    xi.iterations = it;
    xi.residual = current_residual();
    const double drift = std::abs(xi.total - total_begin) / total_begin;
    xi.max_total_drift = std::max(xi.max_total_drift, drift);
    if (xi.residual <= tol) {
      xi.converged = true;
      return;
    }
  }
}

}  // namespace hypa
