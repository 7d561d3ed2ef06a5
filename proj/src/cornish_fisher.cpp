#include "cltscope/cornish_fisher.hpp"

#include <cmath>

#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

void require_args(long long n, double p, const char* who) {
  if (n < 1) {
    throw InvalidInputError(std::string(who) + ": n must be at least 1");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInputError(std::string(who) + ": p must lie strictly in (0,1)");
  }
}

}  // namespace

double cf_term_skew(long long n, double p, double skew) {
  require_args(n, p, "cf_term_skew");
  const double q = std_normal_quantile(p);
  return skew * (q * q - 1.0) / (6.0 * std::sqrt(static_cast<double>(n)));
}

double cf_term_skew_kurt(long long n, double p, double skew, double ekurt) {
  require_args(n, p, "cf_term_skew_kurt");
  const double q = std_normal_quantile(p);
  const double q2 = q * q;
  return q * (3.0 * ekurt * (q2 - 3.0) + 2.0 * skew * skew * (5.0 - 2.0 * q2)) /
         (72.0 * static_cast<double>(n));
}

double cf_term_skew_kurt_hermite(long long n, double p, double skew, double ekurt) {
  require_args(n, p, "cf_term_skew_kurt_hermite");
  const double q = std_normal_quantile(p);
  const double he1 = hermite_he(1, q);
  const double he3 = hermite_he(3, q);
  const double dn = static_cast<double>(n);
  return ekurt / (24.0 * dn) * he3 -
         skew * skew / (36.0 * dn) * (2.0 * he3 + he1);
}

double cf_quantile(const ApproxQuery& query, const MomentSummary& ms) {
  validate(query);
  validate(ms);
  const double p = query.point;
  require_args(query.n, p, "cf_quantile");
  double value = std_normal_quantile(p);
  if (query.order != ApproxOrder::kOrder1) {
    value += cf_term_skew(query.n, p, ms.skewness);
  }
  if (query.order == ApproxOrder::kOrderN) {
    if (!ms.excess_kurtosis) {
      throw MissingMomentError(
          "cf_quantile: excess kurtosis required for the O(1/n) term");
    }
    value += cf_term_skew_kurt(query.n, p, ms.skewness, *ms.excess_kurtosis);
  }
  return value;
}

QuantileCurve cf_quantile_curve(long long n, const std::vector<double>& probs,
                                const MomentSummary& ms, ApproxOrder order) {
  QuantileCurve curve;
  curve.values.reserve(probs.size());
  curve.monotone = true;
  ApproxQuery query;
  query.n = n;
  query.order = order;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i > 0 && !(probs[i] > probs[i - 1])) {
      throw InvalidInputError("cf_quantile_curve: probs must be increasing");
    }
    query.point = probs[i];
    curve.values.push_back(cf_quantile(query, ms));
    if (i > 0 && curve.values[i] < curve.values[i - 1]) {
      curve.monotone = false;
    }
  }
  return curve;
}

}  // namespace cltscope
