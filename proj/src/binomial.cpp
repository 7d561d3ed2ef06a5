#include "cltscope/binomial.hpp"

#include <cmath>
#include <string>

#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

constexpr double kPi = 3.1415926535897932385;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_np(long long n, double p, const char* who) {
  if (n < 1) {
    throw InvalidInputError(std::string(who) + ": n must be at least 1");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInputError(std::string(who) + ": p must lie strictly in (0,1)");
  }
}

double log_pmf(long long n, double p, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0) +
         static_cast<double>(k) * std::log(p) +
         static_cast<double>(n - k) * std::log1p(-p);
}

}  // namespace

void validate(const CentralProbQuery& q) {
  require_np(q.n, q.p, "CentralProbQuery");
  if (q.d < 0) {
    throw InvalidInputError("CentralProbQuery: d must be non-negative");
  }
  const double np = static_cast<double>(q.n) * q.p;
  const double limit = std::max(np, static_cast<double>(q.n) - np);
  if (static_cast<double>(q.d) > limit + 1e-9) {
    throw InvalidInputError("CentralProbQuery: d exceeds max(np, n(1-p))");
  }
}

double binomial_pmf(long long n, double p, long long k) {
  require_np(n, p, "binomial_pmf");
  if (k < 0 || k > n) {
    throw InvalidInputError("binomial_pmf: k must lie in [0, n]");
  }
  return std::exp(log_pmf(n, p, k));
}

double binomial_cdf(long long n, double p, long long k) {
  require_np(n, p, "binomial_cdf");
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  const double mean = static_cast<double>(n) * p;
  KahanSum acc;
  if (static_cast<double>(k) <= mean) {
    for (long long j = k; j >= 0; --j) acc.add(std::exp(log_pmf(n, p, j)));
    return std::min(1.0, acc.sum);
  }
  // complement of the (small) upper tail
  for (long long j = n; j > k; --j) acc.add(std::exp(log_pmf(n, p, j)));
  return std::max(0.0, 1.0 - acc.sum);
}

CentralProb central_binomial_prob(const CentralProbQuery& q) {
  validate(q);
  const double np = static_cast<double>(q.n) * q.p;
  const long long anchor = static_cast<long long>(std::floor(np + 1e-9));
  const bool integral = std::fabs(np - std::round(np)) <= 1e-9;
  const long long a = std::max(0LL, anchor - q.d);
  const long long b = std::min(anchor + q.d, q.n);
  if (a == 0 && b == q.n) {
    return CentralProb{1.0, !integral};
  }
  KahanSum acc;
  for (long long s = a; s <= b; ++s) acc.add(std::exp(log_pmf(q.n, q.p, s)));
  return CentralProb{std::min(1.0, acc.sum), !integral};
}

double de_moivre_central_approx(const CentralProbQuery& q,
                                bool continuity_correction) {
  validate(q);
  const double np = static_cast<double>(q.n) * q.p;
  const double sd = std::sqrt(np * (1.0 - q.p));
  const double d = static_cast<double>(q.d) + (continuity_correction ? 0.5 : 0.0);
  const double z = d / sd;
  return std_normal_cdf(z) - std_normal_cdf(-z);
}

double stirling_ln_factorial(long long n) {
  if (n < 1) {
    throw InvalidInputError("stirling_ln_factorial: n must be at least 1");
  }
  const double x = static_cast<double>(n);
  return 0.5 * std::log(2.0 * kPi * x) + x * std::log(x) - x;
}

double de_moivre_pmf_approx(long long n, double p, long long s, DeMoivreForm form) {
  require_np(n, p, "de_moivre_pmf_approx");
  if (s < 0 || s > n) {
    throw InvalidInputError("de_moivre_pmf_approx: s must lie in [0, n]");
  }
  const double nd = static_cast<double>(n);
  const double sd_count = std::sqrt(nd * p * (1.0 - p));
  switch (form) {
    case DeMoivreForm::kSymmetric: {
      if (std::fabs(p - 0.5) > 1e-12 || n % 2 != 0) {
        throw InvalidInputError(
            "de_moivre_pmf_approx: symmetric form needs p = 1/2 and even n");
      }
      const double m = nd / 2.0;
      const double d = static_cast<double>(s) - m;
      return std::exp(-d * d / m) / std::sqrt(kPi * m);
    }
    case DeMoivreForm::kGeneral: {
      const double d = static_cast<double>(s) - nd * p;
      return std::exp(-d * d / (2.0 * nd * p * (1.0 - p))) /
             (std::sqrt(2.0 * kPi) * sd_count);
    }
    case DeMoivreForm::kStandardized: {
      const double z = (static_cast<double>(s) - nd * p) / sd_count;
      return std_normal_pdf(z) / sd_count;
    }
    case DeMoivreForm::kLogSeries: {
      // The Stirling-based expansion of ln P(S_n = s_n); returns the log
      // scale value. Undefined for s < 2 because of the ln(s-1) term.
      if (s < 2) {
        throw InvalidInputError(
            "de_moivre_pmf_approx: log-series form needs s >= 2");
      }
      const double sd_ = static_cast<double>(s);
      return (nd + 0.5) * std::log(nd) + sd_ * std::log(p) +
             (nd - sd_) * std::log1p(-p) - 0.5 * std::log(2.0 * kPi) -
             std::log(sd_) - (sd_ - 0.5) * std::log(sd_ - 1.0) -
             (nd - sd_ + 0.5) * std::log(nd - sd_ + 1.0);
    }
  }
  throw InvalidInputError("de_moivre_pmf_approx: unknown form");
}

}  // namespace cltscope
