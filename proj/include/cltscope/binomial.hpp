#pragma once

namespace cltscope {

// Central-window query: P(|S_n - n*p| <= d) for S_n ~ Binomial(n, p).
struct CentralProbQuery {
  long long n;
  double p;
  long long d;
};

void validate(const CentralProbQuery& q);

// Exact Binomial mass/cumulative probabilities, in log space via lgamma.
// The CDF sums whichever tail is shorter with compensated summation, so it
// stays accurate for n up to 10^4 and beyond.
double binomial_pmf(long long n, double p, long long k);
double binomial_cdf(long long n, double p, long long k);

// Exact central probability sum_{s=a}^{b} P(S_n = s) with a = max(0, np-d),
// b = min(np+d, n). The classical treatment takes np to be an integer; for
// non-integral np the window is anchored at floor(np) and the result is
// flagged.
struct CentralProb {
  double value;
  bool anchored_at_floor;  // set when np was not integral
};

CentralProb central_binomial_prob(const CentralProbQuery& q);

// Normal approximation Phi(z) - Phi(-z) to the central probability, with
// z = d/sqrt(np(1-p)), or z = (d+0.5)/sqrt(np(1-p)) with the continuity
// correction.
double de_moivre_central_approx(const CentralProbQuery& q, bool continuity_correction);

// (1/2)ln(2*pi*n) + n*ln(n) - n.
double stirling_ln_factorial(long long n);

// Historical PMF approximations.
enum class DeMoivreForm {
  kSymmetric,     // p = 1/2, n = 2m: P(S = m+d) ~ exp(-d^2/m)/sqrt(pi*m)
  kGeneral,       // P(S = np+d) ~ exp(-d^2/(2np(1-p)))/sqrt(2*pi*np(1-p))
  kStandardized,  // P(S = s) ~ phi((s-np)/sqrt(np(1-p)))/sqrt(np(1-p))
  kLogSeries,     // Stirling-based expansion of ln P(S = s); returns the log
};

double de_moivre_pmf_approx(long long n, double p, long long s, DeMoivreForm form);

}  // namespace cltscope
