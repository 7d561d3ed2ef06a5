#include "cltscope/sample_size.hpp"

#include <cmath>

#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

constexpr double kPi = 3.1415926535897932385;
constexpr double kSqrt2Pi = 2.5066282746310005024;

void require_epsilon(double epsilon, const char* who) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw InvalidInputError(std::string(who) + ": epsilon must lie in (0, 0.5)");
  }
}

long long ceil_clamped(double x) {
  if (!(x < 9e18)) {
    throw InvalidInputError("sample size does not fit a 64-bit integer");
  }
  return std::max(1LL, static_cast<long long>(std::ceil(x)));
}

}  // namespace

void validate(const QuarticProblem& prob) {
  if (!(prob.epsilon > 0.0)) {
    throw InvalidInputError("QuarticProblem: epsilon must be positive");
  }
  if (!(prob.u > 0.0 && prob.u <= 1.0)) {
    throw InvalidInputError("QuarticProblem: u must lie in (0, 1]");
  }
  if (!std::isfinite(prob.v) || !std::isfinite(prob.w)) {
    throw InvalidInputError("QuarticProblem: coefficients must be finite");
  }
}

double g_of_z(double z) {
  if (!std::isfinite(z)) {
    throw InvalidInputError("g_of_z: argument must be finite");
  }
  const double t = std::exp(-0.5 * z * z) * (z * z - 1.0);
  return t * t;
}

long long n3_star(double z, double epsilon, double skew) {
  require_epsilon(epsilon, "n3_star");
  return ceil_clamped(skew * skew * g_of_z(z) / (72.0 * kPi * epsilon * epsilon));
}

long long n3_max(double skew, double epsilon) {
  require_epsilon(epsilon, "n3_max");
  return ceil_clamped(skew * skew / (72.0 * kPi * epsilon * epsilon));
}

double quartic_residual(const QuarticProblem& prob, double s) {
  const double ratio = prob.epsilon / prob.u;
  const double s2 = s * s;
  return ratio * ratio * s2 * s2 - prob.v * prob.v * s2 -
         2.0 * prob.v * prob.w * s - prob.w * prob.w;
}

std::vector<double> ferrari_roots(const QuarticProblem& prob) {
  validate(prob);
  const double u = prob.u, v = prob.v, w = prob.w, eps = prob.epsilon;
  const double sqrt_u = std::sqrt(u);
  const double uv = u * v;
  std::vector<double> roots;

  // (eps/u) s^2 + v s + w = 0 branch. (Published collected forms sometimes
  // print this pair as (-sqrt(u)sqrt(uv^2-4we) +/- uv)/(2e); the residual
  // check catches that the leading uv needs the minus sign.)
  const double disc_minus = u * v * v - 4.0 * w * eps;
  if (disc_minus >= 0.0) {
    const double t = sqrt_u * std::sqrt(disc_minus);
    roots.push_back((-uv + t) / (2.0 * eps));
    roots.push_back((-uv - t) / (2.0 * eps));
  }
  const double disc_plus = u * v * v + 4.0 * w * eps;
  if (disc_plus >= 0.0) {
    const double t = sqrt_u * std::sqrt(disc_plus);
    roots.push_back((uv + t) / (2.0 * eps));
    roots.push_back((uv - t) / (2.0 * eps));
  }
  return roots;
}

QuarticProblem quartic_for(double z, double epsilon, const MomentSummary& ms) {
  validate(ms);
  require_epsilon(epsilon, "n34_star");
  if (!ms.excess_kurtosis) {
    throw MissingMomentError("n34_star: excess kurtosis required");
  }
  const double skew = ms.skewness;
  const double ekurt = *ms.excess_kurtosis;
  const double z2 = z * z;
  QuarticProblem prob;
  prob.epsilon = epsilon;
  prob.u = std::exp(-0.5 * z2);
  prob.v = -skew * (z2 - 1.0) / (6.0 * kSqrt2Pi);
  prob.w = (3.0 * ekurt * (z2 * z2 - 6.0 * z2 + 3.0) -
            skew * skew * z * (z2 * z2 - 10.0 * z2 + 15.0)) /
           (72.0 * kSqrt2Pi);
  return prob;
}

long long n34_star(double z, double epsilon, const MomentSummary& ms) {
  const QuarticProblem prob = quartic_for(z, epsilon, ms);
  const std::vector<double> roots = ferrari_roots(prob);
  double s34 = 0.0;
  for (double s : roots) {
    if (std::fabs(s) > std::fabs(s34)) s34 = s;
  }
  return ceil_clamped(s34 * s34);
}

BerryEsseenBound berry_esseen_bound(const MomentSummary& ms, long long n,
                                    std::optional<double> c) {
  validate(ms);
  if (n < 1) {
    throw InvalidInputError("berry_esseen_bound: n must be at least 1");
  }
  if (!ms.abs_third_std_moment) {
    throw MissingMomentError(
        "berry_esseen_bound: the absolute third standardized moment is required");
  }
  const double cc = c.value_or(kBerryEsseenDefaultC);
  if (!(cc > 0.0)) {
    throw InvalidInputError("berry_esseen_bound: constant must be positive");
  }
  BerryEsseenBound out;
  out.c = cc;
  out.rho = *ms.abs_third_std_moment;
  out.n = n;
  out.bound = cc * out.rho / std::sqrt(static_cast<double>(n));
  return out;
}

FinitePmf esseen_extremal(double h) {
  if (!(h > 0.0)) {
    throw InvalidInputError("esseen_extremal: h must be positive");
  }
  const double root10 = std::sqrt(10.0);
  FinitePmf pmf;
  pmf.support = {-h * (4.0 - root10) / 2.0, h * (root10 - 2.0) / 2.0};
  pmf.probs = {(root10 - 2.0) / 2.0, (4.0 - root10) / 2.0};
  return pmf;
}

double esseen_extremal_constant() {
  return (3.0 + std::sqrt(10.0)) / (6.0 * kSqrt2Pi);
}

long long wlln_clt_n(double p, double half_width, double target_prob) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInputError("wlln_clt_n: p must lie in (0,1)");
  }
  if (!(half_width > 0.0 && half_width < std::min(p, 1.0 - p))) {
    throw InvalidInputError(
        "wlln_clt_n: half_width must lie in (0, min(p, 1-p))");
  }
  if (!(target_prob > 0.0 && target_prob < 1.0)) {
    throw InvalidInputError("wlln_clt_n: target probability must lie in (0,1)");
  }
  const double z = std_normal_quantile(0.5 * (1.0 + target_prob));
  const double root = z * std::sqrt(p * (1.0 - p)) / half_width;
  return ceil_clamped(root * root);
}

double wlln_chebyshev_n(double p, double half_width, double target_prob) {
  if (!(p > 0.0 && p < 1.0) || !(half_width > 0.0) ||
      !(target_prob > 0.0 && target_prob < 1.0)) {
    throw InvalidInputError("wlln_chebyshev_n: arguments out of range");
  }
  return p * (1.0 - p) / (half_width * half_width * (1.0 - target_prob));
}

}  // namespace cltscope
