#include <doctest.h>

#include <cmath>
#include <random>

#include "cltscope/cornish_fisher.hpp"
#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"
#include "oracles.hpp"

using namespace cltscope;

namespace {

double quantile(long long n, double p, const MomentSummary& ms, ApproxOrder order) {
  ApproxQuery q;
  q.n = n;
  q.point = p;
  q.order = order;
  return cf_quantile(q, ms);
}

}  // namespace

TEST_SUITE_BEGIN("cornish_fisher");

TEST_CASE("skewness term anchors") {
  CHECK(cf_term_skew(12, 0.3, 0.0) == 0.0);
  // He_2 vanishes where Phi^-1(p) = +/-1
  CHECK(cf_term_skew(12, std_normal_cdf(1.0), 2.0) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cf_term_skew(12, std_normal_cdf(-1.0), 2.0) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cf_term_skew(50, 0.5, 5.07) == doctest::Approx(-0.11950).epsilon(1e-4));
  CHECK_THROWS_AS(cf_term_skew(10, 0.0, 1.0), InvalidInputError);
  CHECK_THROWS_AS(cf_term_skew(10, 1.0, 1.0), InvalidInputError);
}

TEST_CASE("kurtosis term anchors") {
  CHECK(cf_term_skew_kurt(12, 0.5, 2.0, 6.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(cf_term_skew_kurt(12, 0.31, 0.0, 0.0) == 0.0);
}

TEST_CASE("hermite form agrees with the collected form") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  std::uniform_real_distribution<double> lam_pick(-3.0, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double p = unif(rng);
    const double lam = lam_pick(rng);
    const double eta = std::fabs(lam_pick(rng)) * 3.0;
    for (long long n : {1LL, 9LL, 250LL}) {
      CHECK(cf_term_skew_kurt(n, p, lam, eta) ==
            doctest::Approx(cf_term_skew_kurt_hermite(n, p, lam, eta))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("reduces to the normal quantile") {
  MomentSummary normal;
  normal.skewness = 0.0;
  normal.excess_kurtosis = 0.0;
  for (double p : {0.01, 0.25, 0.5, 0.9, 0.9995}) {
    for (ApproxOrder order :
         {ApproxOrder::kOrder1, ApproxOrder::kOrderSqrtN, ApproxOrder::kOrderN}) {
      CHECK(quantile(10, p, normal, order) ==
            doctest::Approx(std_normal_quantile(p)).epsilon(1e-15));
    }
  }
}

TEST_CASE("corrected quantile beats the normal one for gamma sums") {
  MomentSummary exp_ms;
  exp_ms.skewness = 2.0;
  exp_ms.excess_kurtosis = 6.0;
  const long long n = 16;
  const double p = 0.9995;
  // standardized Gamma(16,1) quantile
  const double exact =
      (oracles::gamma_quantile(16.0, p) - 16.0) / std::sqrt(16.0);
  const double o1 = quantile(n, p, exp_ms, ApproxOrder::kOrder1);
  const double on = quantile(n, p, exp_ms, ApproxOrder::kOrderN);
  CHECK(std::fabs(on - exact) < std::fabs(o1 - exact));
}

TEST_CASE("antisymmetry for symmetric summands") {
  MomentSummary ms;
  ms.skewness = 0.0;
  ms.excess_kurtosis = 4.0;
  for (double p : {0.01, 0.2, 0.37, 0.45}) {
    const double lo = quantile(7, p, ms, ApproxOrder::kOrderN);
    const double hi = quantile(7, 1.0 - p, ms, ApproxOrder::kOrderN);
    CHECK(lo + hi == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("terms scale exactly in n") {
  const double u1 = cf_term_skew(1, 0.77, 1.3);
  const double u100 = cf_term_skew(100, 0.77, 1.3);
  CHECK(u1 / u100 == doctest::Approx(10.0).epsilon(1e-13));
  const double v1 = cf_term_skew_kurt(1, 0.77, 1.3, 2.0);
  const double v100 = cf_term_skew_kurt(100, 0.77, 1.3, 2.0);
  CHECK(v1 / v100 == doctest::Approx(100.0).epsilon(1e-13));
}

TEST_CASE("inverse consistency with the edgeworth cdf at matching order") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> small(-0.5, 0.5);
  for (int rep = 0; rep < 20; ++rep) {
    MomentSummary ms;
    ms.skewness = small(rng);
    ms.excess_kurtosis = std::fabs(small(rng));
    for (long long n : {20LL, 80LL}) {
      for (double p = 0.05; p <= 0.95; p += 0.09) {
        const double z = quantile(n, p, ms, ApproxOrder::kOrderN);
        ApproxQuery q;
        q.n = n;
        q.point = z;
        q.order = ApproxOrder::kOrderN;
        const double back = edgeworth_cdf(q, ms).value;
        const double lam = std::fabs(ms.skewness);
        const double eta = std::fabs(*ms.excess_kurtosis);
        const double budget =
            5.0 * std::pow(lam / std::sqrt(static_cast<double>(n)) +
                               eta / static_cast<double>(n),
                           2.0) +
            1e-9;
        CHECK(std::fabs(back - p) <= budget);
      }
    }
  }
}

TEST_CASE("monotonicity flag on a quantile curve") {
  MomentSummary wild;
  wild.skewness = 5.07;
  wild.excess_kurtosis = 33.81;
  std::vector<double> ps;
  for (double p = 0.001; p < 0.999; p += 0.002) ps.push_back(p);
  // n = 1: the formal expansion folds back somewhere
  const QuantileCurve small_n = cf_quantile_curve(1, ps, wild, ApproxOrder::kOrderN);
  CHECK_FALSE(small_n.monotone);
  // large n: monotone
  const QuantileCurve large_n =
      cf_quantile_curve(100000, ps, wild, ApproxOrder::kOrderN);
  CHECK(large_n.monotone);
}

TEST_CASE("missing eta raises only at order n") {
  MomentSummary ms;
  ms.skewness = 0.8;
  ApproxQuery q;
  q.n = 30;
  q.point = 0.9;
  q.order = ApproxOrder::kOrderN;
  CHECK_THROWS_AS(cf_quantile(q, ms), MissingMomentError);
  q.order = ApproxOrder::kOrderSqrtN;
  CHECK_NOTHROW(cf_quantile(q, ms));
}

TEST_SUITE_END();
