#pragma once

#include <optional>

#include "cltscope/distribution.hpp"

namespace cltscope {

// Correction order of an asymptotic approximation: the Normal limit alone,
// the skewness term added (error O(n^-1/2)), or the skewness-kurtosis term
// added as well (error O(n^-1)).
enum class ApproxOrder { kOrder1, kOrderSqrtN, kOrderN };

// One evaluation request. `point` is z on the CDF/PDF scale, or p in (0,1)
// on the quantile scale, depending on the receiving operation.
struct ApproxQuery {
  long long n = 1;
  double point = 0.0;
  std::optional<double> epsilon;  // accuracy target, in (0, 0.5) when present
  ApproxOrder order = ApproxOrder::kOrder1;
};

void validate(const ApproxQuery& query);

// Formal expansions are not guaranteed to stay inside the range probability
// theory demands, so CDF/PDF evaluations carry the raw value plus a flag
// that reports the violation instead of clamping it away.
struct CdfApprox {
  double value;
  bool outside_unit_interval;
};

struct PdfApprox {
  double value;
  bool negative;
};

// O(n^-1/2) additive CDF correction:
//   -skew * exp(-z^2/2) * (z^2 - 1) / (6 * sqrt(2*pi*n)).
double cdf_term_skew(long long n, double z, double skew);

// O(n^-1) additive CDF correction,
//   -exp(-z^2/2) * [3*ekurt*z*(z^2-3) + skew^2*z*(z^4-10z^2+15)]
//     / (72*n*sqrt(2*pi)),
// i.e. -phi(z) * [ekurt*He3(z)/24 + skew^2*He5(z)/72] / n, the antiderivative
// of the PDF-scale term below. (Some published collected forms print the
// fourth-degree Hermite polynomial in the kurtosis part; that variant breaks
// the term-by-term derivative relation between the CDF and PDF series and
// makes the two-term approximation worse than the one-term one.)
double cdf_term_skew_kurt(long long n, double z, double skew, double ekurt);

// CDF of the standardized mean, approximated at the requested order.
// Needs ms.excess_kurtosis for kOrderN (MissingMomentError otherwise).
CdfApprox edgeworth_cdf(const ApproxQuery& query, const MomentSummary& ms);

// PDF-scale counterparts:
//   skew * exp(-z^2/2) * z * (z^2-3) / (6*sqrt(2*pi*n))
double pdf_term_skew(long long n, double z, double skew);

//   exp(-z^2/2) * [3*ekurt*(z^4-6z^2+3) + skew^2*(z^6-15z^4+45z^2-15)]
//     / (72*n*sqrt(2*pi))
double pdf_term_skew_kurt(long long n, double z, double skew, double ekurt);

PdfApprox edgeworth_pdf(const ApproxQuery& query, const MomentSummary& ms);

// Least n keeping the one-term PDF approximation positive on (z_star, inf)
// for positively skewed summands: ceil of [skew*z_star*(3-z_star^2)/6]^2,
// clamped to at least 1. Requires skew > 0 and z_star < 0.
long long min_n_nonneg_pdf(double skew, double z_star);

}  // namespace cltscope
