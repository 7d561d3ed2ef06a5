#include "cltscope/edgeworth.hpp"

#include <cmath>

#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

void require_n(long long n, const char* who) {
  if (n < 1) {
    throw InvalidInputError(std::string(who) + ": n must be at least 1");
  }
}

double require_ekurt(const MomentSummary& ms, const char* who) {
  if (!ms.excess_kurtosis) {
    throw MissingMomentError(std::string(who) +
                             ": excess kurtosis required for the O(1/n) term");
  }
  return *ms.excess_kurtosis;
}

}  // namespace

void validate(const ApproxQuery& query) {
  if (query.n < 1) {
    throw InvalidInputError("ApproxQuery: n must be at least 1");
  }
  if (!std::isfinite(query.point)) {
    throw InvalidInputError("ApproxQuery: evaluation point must be finite");
  }
  if (query.epsilon && !(*query.epsilon > 0.0 && *query.epsilon < 0.5)) {
    throw InvalidInputError("ApproxQuery: epsilon must lie in (0, 0.5)");
  }
}

double cdf_term_skew(long long n, double z, double skew) {
  require_n(n, "cdf_term_skew");
  const double root_n = std::sqrt(static_cast<double>(n));
  return -skew * std::exp(-0.5 * z * z) * (z * z - 1.0) /
         (6.0 * kSqrt2Pi * root_n);
}

double cdf_term_skew_kurt(long long n, double z, double skew, double ekurt) {
  require_n(n, "cdf_term_skew_kurt");
  const double z2 = z * z;
  const double he3 = z * (z2 - 3.0);
  const double he5 = z * (z2 * z2 - 10.0 * z2 + 15.0);
  return -std::exp(-0.5 * z2) * (3.0 * ekurt * he3 + skew * skew * he5) /
         (72.0 * static_cast<double>(n) * kSqrt2Pi);
}

CdfApprox edgeworth_cdf(const ApproxQuery& query, const MomentSummary& ms) {
  validate(query);
  validate(ms);
  const double z = query.point;
  double value = std_normal_cdf(z);
  if (query.order != ApproxOrder::kOrder1) {
    value += cdf_term_skew(query.n, z, ms.skewness);
  }
  if (query.order == ApproxOrder::kOrderN) {
    const double ekurt = require_ekurt(ms, "edgeworth_cdf");
    value += cdf_term_skew_kurt(query.n, z, ms.skewness, ekurt);
  }
  return CdfApprox{value, value < 0.0 || value > 1.0};
}

double pdf_term_skew(long long n, double z, double skew) {
  require_n(n, "pdf_term_skew");
  const double root_n = std::sqrt(static_cast<double>(n));
  return skew * std::exp(-0.5 * z * z) * z * (z * z - 3.0) /
         (6.0 * kSqrt2Pi * root_n);
}

double pdf_term_skew_kurt(long long n, double z, double skew, double ekurt) {
  require_n(n, "pdf_term_skew_kurt");
  const double z2 = z * z;
  const double he4 = z2 * z2 - 6.0 * z2 + 3.0;
  const double he6 = z2 * z2 * z2 - 15.0 * z2 * z2 + 45.0 * z2 - 15.0;
  return std::exp(-0.5 * z2) * (3.0 * ekurt * he4 + skew * skew * he6) /
         (72.0 * static_cast<double>(n) * kSqrt2Pi);
}

PdfApprox edgeworth_pdf(const ApproxQuery& query, const MomentSummary& ms) {
  validate(query);
  validate(ms);
  const double z = query.point;
  double value = std_normal_pdf(z);
  if (query.order != ApproxOrder::kOrder1) {
    value += pdf_term_skew(query.n, z, ms.skewness);
  }
  if (query.order == ApproxOrder::kOrderN) {
    const double ekurt = require_ekurt(ms, "edgeworth_pdf");
    value += pdf_term_skew_kurt(query.n, z, ms.skewness, ekurt);
  }
  return PdfApprox{value, value < 0.0};
}

long long min_n_nonneg_pdf(double skew, double z_star) {
  if (!(skew > 0.0)) {
    throw InvalidInputError(
        "min_n_nonneg_pdf: only positive skewness is handled (left tail)");
  }
  if (!(z_star < 0.0) || !std::isfinite(z_star)) {
    throw InvalidInputError("min_n_nonneg_pdf: z_star must be negative");
  }
  const double root = skew * z_star * (3.0 - z_star * z_star) / 6.0;
  const double n = std::ceil(root * root);
  return std::max(1LL, static_cast<long long>(n));
}

}  // namespace cltscope
