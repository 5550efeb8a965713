#pragma once

#include "hypa/types.hpp"

namespace hypa {

// Marginal null model for one candidate edge: an urn holds xi_total balls of
// which xi_vw favor the edge; m draws without replacement. Capacities may be
// real (they come out of the fitting step); binomial coefficients generalize
// through the gamma function. The support is
//   max(0, m - floor(xi_total - xi_vw)) <= f <= min(m, floor(xi_vw)),
// with a tiny slack so capacities a rounding error below an integer still
// admit it.

// log Pr(X = f); -inf outside the support. Throws std::domain_error when the
// parameters themselves are inconsistent (negative capacity, xi_vw beyond
// xi_total, f > m, or m exceeding the total capacity).
double hypergeom_logpmf(double xi_vw, double xi_total, Count m, Count f);

// Pr(X <= f), accumulated in log space from the lower support bound via the
// pmf ratio
//   pmf(x+1)/pmf(x) = (xi_vw - x)(m - x) / ((x+1)(xi_total - xi_vw - m + x+1)),
// then clamped to [0, 1]. Monotone in f by construction. Values below alpha
// flag under-representation, above 1 - alpha over-representation.
double hypa_score(double xi_vw, double xi_total, Count m, Count f);

// log(exp(a) + exp(b)) without overflow.
double logaddexp(double a, double b);

}  // namespace hypa
