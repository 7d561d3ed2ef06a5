#pragma once

#include <optional>
#include <vector>

#include "cltscope/distribution.hpp"

namespace cltscope {

// Coefficients of the depressed quartic (eps/u)^2 s^4 - v^2 s^2 - 2vw s - w^2
// whose real roots locate the sample sizes where the two-term CDF error
// crosses eps: u = exp(-z^2/2), v the skewness coefficient, w the
// skewness-kurtosis coefficient.
struct QuarticProblem {
  double epsilon;
  double u;
  double v;
  double w;
};

void validate(const QuarticProblem& prob);

// Berry-Esseen uniform bound c*rho/sqrt(n) on |F_{Z_n}(z) - Phi(z)|.
struct BerryEsseenBound {
  double c;
  double rho;
  long long n;
  double bound;
};

// Squared, scaled second derivative of the Normal density that shapes the
// skewness-only sample-size requirement:
//   g(z) = [exp(-z^2/2) * (z^2 - 1)]^2.
// Global maximum g(0)=1, zeros at z = +/-1, local maxima at z = +/-sqrt(3).
double g_of_z(double z);

// Skewness-only sample size at a fixed evaluation point:
//   ceil(skew^2 * g(z) / (72*pi*eps^2)), clamped to at least 1.
long long n3_star(double z, double epsilon, double skew);

// Worst case over z (attained at z = 0): ceil(skew^2/(72*pi*eps^2)).
long long n3_max(double skew, double epsilon);

// All real roots of the depressed quartic, via Ferrari's closed form:
//   s = [-u v +/- sqrt(u)*sqrt(u v^2 - 4 w eps)] / (2 eps)  and
//   s = [ u v +/- sqrt(u)*sqrt(u v^2 + 4 w eps)] / (2 eps).
// Complex branches are dropped; at least one branch is always real because
// u*v^2 >= 0. Each returned s satisfies |h(s)| <= 1e-8 * max(1, s^4).
std::vector<double> ferrari_roots(const QuarticProblem& prob);

// Evaluates the quartic h(s) itself (residual checks, tests).
double quartic_residual(const QuarticProblem& prob, double s);

// Builds the quartic for the two-term (skewness + kurtosis) CDF error at z,
// takes the root largest in absolute value, and returns ceil(s^2) >= 1.
// Requires ms.excess_kurtosis (MissingMomentError otherwise).
long long n34_star(double z, double epsilon, const MomentSummary& ms);

// Exposed for table generation: the (u, v, w) coefficients used by n34_star.
QuarticProblem quartic_for(double z, double epsilon, const MomentSummary& ms);

// Berry-Esseen bound with the best published universal constant 0.4748 by
// default; callers may override c (e.g. with the extremal-family constant
// (3+sqrt(10))/(6*sqrt(2*pi)) ~= 0.4097). Requires ms.abs_third_std_moment.
inline constexpr double kBerryEsseenDefaultC = 0.4748;
BerryEsseenBound berry_esseen_bound(const MomentSummary& ms, long long n,
                                    std::optional<double> c = std::nullopt);

// Esseen's extremal two-point family, scaled by h > 0: mass (sqrt(10)-2)/2
// at -h(4-sqrt(10))/2 and mass (4-sqrt(10))/2 at h(sqrt(10)-2)/2.
FinitePmf esseen_extremal(double h);

// The constant attained by that family.
double esseen_extremal_constant();

// Smallest n with 2*Phi(half_width*sqrt(n)/sqrt(p(1-p))) - 1 >= target_prob
// for Bernoulli(p) means, by the closed form n = ceil((z*sqrt(p(1-p))/
// half_width)^2), z = Phi^-1((1+target_prob)/2).
long long wlln_clt_n(double p, double half_width, double target_prob);

// Chebyshev companion for the same question: p(1-p)/(half_width^2*(1-target)).
double wlln_chebyshev_n(double p, double half_width, double target_prob);

}  // namespace cltscope
