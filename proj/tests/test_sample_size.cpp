#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cltscope/binomial.hpp"
#include "cltscope/errors.hpp"
#include "cltscope/sample_size.hpp"
#include "cltscope/special_functions.hpp"
#include "oracles.hpp"

using namespace cltscope;

namespace {

MomentSummary income_moments() {
  MomentSummary ms;
  ms.skewness = 5.070;
  ms.excess_kurtosis = 33.81;
  return ms;
}

}  // namespace

TEST_SUITE_BEGIN("sample_size");

TEST_CASE("g function anchors") {
  CHECK(g_of_z(0.0) == 1.0);
  CHECK(g_of_z(1.0) == 0.0);
  CHECK(g_of_z(-1.0) == 0.0);
  CHECK(std::fabs(g_of_z(3.29) - 0.0019) <= 1e-4);
  CHECK(g_of_z(5.0) >= 0.0);
}

TEST_CASE("n3 anchors from the income example") {
  const double z975 = std_normal_quantile(0.975);
  const double z9995 = std_normal_quantile(0.9995);
  CHECK(std::llabs(n3_star(z975, 0.005, 5.070) - 788) <= 1);
  CHECK(std::llabs(n3_star(z9995, 0.0005, 5.070) - 872) <= 1);
  CHECK(n3_star(1.3, 0.01, 0.0) == 1);
}

TEST_CASE("n3_max equals n3_star at zero") {
  for (double eps : {0.01, 0.005, 0.001}) {
    for (double lam : {0.3, 1.0, 5.07}) {
      CHECK(n3_max(lam, eps) == n3_star(0.0, eps, lam));
    }
  }
  CHECK(n3_max(5.07, 0.005) == 4546);
  CHECK(n3_max(0.0, 0.01) == 1);
}

TEST_CASE("n3 scaling in epsilon") {
  const double z = std_normal_quantile(0.995);
  CHECK(n3_star(z, 0.001, 5.07) >= n3_star(z, 0.01, 5.07));
  // exact factor 100 when eps drops tenfold (up to the ceiling)
  const double raw_01 = 5.07 * 5.07 * g_of_z(z) / (72.0 * M_PI * 0.01 * 0.01);
  const long long n_001 = n3_star(z, 0.001, 5.07);
  CHECK(n_001 == static_cast<long long>(std::ceil(raw_01 * 100.0)));
  // non-increasing in g(z): move z toward 1 where g vanishes
  CHECK(n3_star(0.0, 0.005, 5.07) >= n3_star(0.7, 0.005, 5.07));
  CHECK(n3_star(0.7, 0.005, 5.07) >= n3_star(1.0, 0.005, 5.07));
}

TEST_CASE("ferrari roots: special shapes") {
  // W = 0 collapses to {0, 0, +/- UV/eps}
  QuarticProblem prob{0.01, 0.6, -0.8, 0.0};
  auto roots = ferrari_roots(prob);
  REQUIRE(roots.size() == 4);
  std::sort(roots.begin(), roots.end());
  const double uv_over_eps = 0.6 * -0.8 / 0.01;
  CHECK(roots.front() == doctest::Approx(uv_over_eps).epsilon(1e-12));
  CHECK(roots.back() == doctest::Approx(-uv_over_eps).epsilon(1e-12));
  CHECK(std::fabs(roots[1]) <= 1e-12);
  CHECK(std::fabs(roots[2]) <= 1e-12);
  for (double s : roots) {
    CHECK(std::fabs(quartic_residual(prob, s)) <=
          1e-8 * std::max(1.0, s * s * s * s));
  }

  // V = 0 (z = 1): two real roots at +/- sqrt(U|W|/eps)
  QuarticProblem prob_v0{0.005, 0.7, 0.0, -1.2};
  auto roots_v0 = ferrari_roots(prob_v0);
  REQUIRE(roots_v0.size() == 2);
  std::sort(roots_v0.begin(), roots_v0.end());
  const double expected = std::sqrt(0.7 * 1.2 / 0.005);
  CHECK(roots_v0.back() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(roots_v0.front() == doctest::Approx(-expected).epsilon(1e-12));
}

TEST_CASE("income quartic at z=0 has four real roots") {
  const QuarticProblem prob = quartic_for(0.0, 0.005, income_moments());
  const auto roots = ferrari_roots(prob);
  CHECK(roots.size() == 4);
  for (double s : roots) {
    CHECK(std::fabs(quartic_residual(prob, s)) <=
          1e-8 * std::max(1.0, s * s * s * s));
  }
}

TEST_CASE("ferrari roots agree with a bisection scan") {
  const MomentSummary ms = income_moments();
  for (double z : {0.0, 0.5, 1.959964, 3.290527}) {
    for (double eps : {0.01, 0.001}) {
      const QuarticProblem prob = quartic_for(z, eps, ms);
      auto closed = ferrari_roots(prob);
      std::sort(closed.begin(), closed.end());
      closed.erase(std::unique(closed.begin(), closed.end(),
                               [](double a, double b) {
                                 return std::fabs(a - b) < 1e-6;
                               }),
                   closed.end());
      const double big = std::max(std::fabs(closed.front()),
                                  std::fabs(closed.empty() ? 0.0 : closed.back()));
      const double span = std::max(10.0, 2.0 * big);
      // coarse scan for the O(1/eps) roots, fine scan for the near-origin
      // pair that can sit only ~1e-3 apart
      auto scanned = oracles::bisection_roots(
          [&](double s) { return quartic_residual(prob, s); }, -span, span,
          200000);
      const auto fine = oracles::bisection_roots(
          [&](double s) { return quartic_residual(prob, s); }, -5.0, 5.0,
          400000);
      scanned.insert(scanned.end(), fine.begin(), fine.end());
      std::sort(scanned.begin(), scanned.end());
      scanned.erase(std::unique(scanned.begin(), scanned.end(),
                                [](double a, double b) {
                                  return std::fabs(a - b) < 1e-6;
                                }),
                    scanned.end());
      REQUIRE(closed.size() == scanned.size());
      for (std::size_t i = 0; i < closed.size(); ++i) {
        CHECK(closed[i] == doctest::Approx(scanned[i]).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("n34 anchors from the income table") {
  const MomentSummary ms = income_moments();
  const double z975 = std_normal_quantile(0.975);
  const double z995 = std_normal_quantile(0.995);
  CHECK(std::fabs(static_cast<double>(n34_star(z975, 0.005, ms)) - 821.0) <=
        0.01 * 821.0);
  CHECK(std::fabs(static_cast<double>(n34_star(z995, 0.001, ms)) - 5219.0) <=
        0.01 * 5219.0);
  MomentSummary normal;
  normal.skewness = 0.0;
  normal.excess_kurtosis = 0.0;
  CHECK(n34_star(1.0, 0.01, normal) == 1);
}

TEST_CASE("n34 dominates n3 on the income parameters") {
  const MomentSummary ms = income_moments();
  for (double p : {0.975, 0.995, 0.9995}) {
    for (double eps : {0.01, 0.005, 0.001, 0.0005}) {
      const double z = std_normal_quantile(p);
      CHECK(n34_star(z, eps, ms) >= n3_star(z, eps, ms.skewness));
    }
  }
}

TEST_CASE("missing eta raises on n34") {
  MomentSummary ms;
  ms.skewness = 2.0;
  CHECK_THROWS_AS(n34_star(1.0, 0.01, ms), MissingMomentError);
  CHECK_THROWS_AS(n3_star(1.0, 0.7, 2.0), InvalidInputError);  // bad eps
}

TEST_CASE("berry-esseen bound basics") {
  MomentSummary pm;
  pm.skewness = 0.0;
  pm.excess_kurtosis = -2.0;
  pm.abs_third_std_moment = 1.0;
  const BerryEsseenBound b = berry_esseen_bound(pm, 100);
  CHECK(b.bound == doctest::Approx(0.04748).epsilon(1e-12));
  CHECK(b.c == kBerryEsseenDefaultC);
  const BerryEsseenBound b4 = berry_esseen_bound(pm, 400);
  CHECK(b4.bound == doctest::Approx(b.bound / 2.0).epsilon(1e-13));

  MomentSummary no_rho;
  no_rho.skewness = 0.0;
  CHECK_THROWS_AS(berry_esseen_bound(no_rho, 10), MissingMomentError);
}

TEST_CASE("esseen extremal family") {
  CHECK(esseen_extremal_constant() == doctest::Approx(0.40973).epsilon(2.5e-4));
  for (double h : {0.5, 1.0, 2.0}) {
    const FinitePmf pmf = esseen_extremal(h);
    REQUIRE(pmf.support.size() == 2);
    CHECK(pmf.probs[0] + pmf.probs[1] == doctest::Approx(1.0).epsilon(1e-15));
    const oracles::BruteMoments bm = oracles::brute_moments(pmf.support, pmf.probs);
    CHECK(std::fabs(bm.mean) <= 1e-15 * h);
  }
  const FinitePmf unit = esseen_extremal(1.0);
  CHECK(unit.support[0] == doctest::Approx(-0.41886).epsilon(1e-4));
  CHECK(unit.support[1] == doctest::Approx(0.58114).epsilon(1e-4));
  CHECK(unit.probs[0] == doctest::Approx(0.58114).epsilon(1e-4));
  CHECK(unit.probs[1] == doctest::Approx(0.41886).epsilon(1e-4));
  CHECK_THROWS_AS(esseen_extremal(0.0), InvalidInputError);
}

TEST_CASE("berry-esseen bound dominates the symmetric two-point error") {
  // Exact CDF of Z_n for +/-1 fair coin flips via the Binomial; the default
  // constant must dominate |F - Phi| everywhere.
  MomentSummary pm;
  pm.skewness = 0.0;
  pm.excess_kurtosis = -2.0;
  pm.abs_third_std_moment = 1.0;
  for (long long n = 1; n <= 64; ++n) {
    const double bound = berry_esseen_bound(pm, n).bound;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (long long k = 0; k <= n; ++k) {
      // S_n = 2k - n, z = S_n / sqrt(n)
      const double z = (2.0 * static_cast<double>(k) - static_cast<double>(n)) / root_n;
      const double exact = binomial_cdf(n, 0.5, k);
      // check both the jump value and the left limit
      CHECK(std::fabs(exact - std_normal_cdf(z)) <= bound + 1e-12);
      const double left = binomial_cdf(n, 0.5, k - 1);
      CHECK(std::fabs(left - std_normal_cdf(z)) <= bound + 1e-12);
    }
  }
}

TEST_CASE("wlln sample sizes") {
  CHECK(wlln_clt_n(0.6, 0.02, 1000.0 / 1001.0) == 6498);
  CHECK(wlln_chebyshev_n(0.6, 0.02, 1000.0 / 1001.0) ==
        doctest::Approx(600600.0).epsilon(1e-9));
  CHECK(wlln_clt_n(0.5, 0.1, 1e-12) == 1);
  CHECK_THROWS_AS(wlln_clt_n(0.6, 0.5, 0.99), InvalidInputError);
  CHECK_THROWS_AS(wlln_clt_n(0.0, 0.1, 0.5), InvalidInputError);
  CHECK_THROWS_AS(wlln_clt_n(0.6, 0.02, 1.0), InvalidInputError);
}

TEST_SUITE_END();
