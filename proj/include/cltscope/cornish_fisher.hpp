#pragma once

#include <vector>

#include "cltscope/distribution.hpp"
#include "cltscope/edgeworth.hpp"

namespace cltscope {

// O(n^-1/2) quantile-scale correction:
//   skew * (Phi^-1(p)^2 - 1) / (6*sqrt(n)).
double cf_term_skew(long long n, double p, double skew);

// O(n^-1) quantile-scale correction, collected polynomial form:
//   Phi^-1(p) * {3*ekurt*(Phi^-1(p)^2 - 3) + 2*skew^2*(5 - 2*Phi^-1(p)^2)}
//     / (72*n).
double cf_term_skew_kurt(long long n, double p, double skew, double ekurt);

// Same quantity written with Hermite polynomials,
//   ekurt/(24n)*He3(q) - skew^2/(36n)*(2*He3(q) + He1(q)),  q = Phi^-1(p).
// Kept as an independent route; the two agree to rounding.
double cf_term_skew_kurt_hermite(long long n, double p, double skew, double ekurt);

// Quantile of the standardized mean at the requested order. `query.point`
// is p in (0,1). Needs ms.excess_kurtosis for kOrderN.
double cf_quantile(const ApproxQuery& query, const MomentSummary& ms);

// Quantile curve over an increasing probability grid. The expansion is
// formal and can lose monotonicity for small n / large skew; `monotone`
// reports whether the returned values are non-decreasing.
struct QuantileCurve {
  std::vector<double> values;
  bool monotone;
};

QuantileCurve cf_quantile_curve(long long n, const std::vector<double>& probs,
                                const MomentSummary& ms, ApproxOrder order);

}  // namespace cltscope
