#include "hypa/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Relative slack when comparing counts against real capacities, so a
// capacity like 4.999999999 still admits 5 draws.
double slack(double v) { return 1e-9 * std::max(1.0, std::abs(v)); }

double log_binom(double n, double x) {
  // C(n, x) for real n >= x >= 0; callers keep arguments in range.
  return std::lgamma(n + 1.0) - std::lgamma(x + 1.0) -
         std::lgamma(n - x + 1.0);
}

void check_params(double xi_vw, double xi_total, Count m, Count f) {
  if (!(xi_vw >= 0.0) || !(xi_total > 0.0))
    throw std::domain_error("capacities must be nonnegative, total positive");
  if (xi_vw > xi_total + slack(xi_total))
    throw std::domain_error("edge capacity exceeds total");
  if (f > m) throw std::domain_error("frequency exceeds draw count");
  if (static_cast<double>(m) > xi_total + slack(xi_total))
    throw std::domain_error("draw count exceeds total capacity");
}

// Inclusive support bounds for the draw count of this edge.
Count support_min(double xi_vw, double xi_total, Count m) {
  const double rest = xi_total - xi_vw;
  const double lo = static_cast<double>(m) - std::floor(rest + slack(rest));
  return lo <= 0.0 ? 0 : static_cast<Count>(lo);
}

Count support_max(double xi_vw, Count m) {
  const double hi = std::floor(xi_vw + slack(xi_vw));
  return hi >= static_cast<double>(m) ? m : static_cast<Count>(hi);
}

}  // namespace

double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double hypergeom_logpmf(double xi_vw, double xi_total, Count m, Count f) {
  check_params(xi_vw, xi_total, m, f);
  if (f < support_min(xi_vw, xi_total, m) || f > support_max(xi_vw, m))
    return kNegInf;
  const double fd = static_cast<double>(f);
  const double md = static_cast<double>(m);
  return log_binom(xi_vw, fd) + log_binom(xi_total - xi_vw, md - fd) -
         log_binom(xi_total, md);
}

double hypa_score(double xi_vw, double xi_total, Count m, Count f) {
  check_params(xi_vw, xi_total, m, f);
  const Count lo = support_min(xi_vw, xi_total, m);
  const Count hi = support_max(xi_vw, m);
  if (f >= hi) return 1.0;  // whole support is <= f
  if (f < lo) return 0.0;   // no support at or below f

  // Walk the support from its lower end, accumulating the CDF in log space.
  const double lod = static_cast<double>(lo);
  const double md = static_cast<double>(m);
  double logp = log_binom(xi_vw, lod) +
                log_binom(xi_total - xi_vw, md - lod) -
                log_binom(xi_total, md);
  double acc = logp;
  for (Count x = lo; x < f; ++x) {
    const double xd = static_cast<double>(x);
    logp += std::log(xi_vw - xd) + std::log(md - xd) -
            std::log(xd + 1.0) -
            std::log(xi_total - xi_vw - md + xd + 1.0);
    acc = logaddexp(acc, logp);
  }
  return std::clamp(std::exp(acc), 0.0, 1.0);
}

}  // namespace hypa
