#include <doctest.h>

#include <cmath>

#include "cltscope/distribution.hpp"
#include "cltscope/income.hpp"
#include "cltscope/sample_size.hpp"

using namespace cltscope;

TEST_SUITE_BEGIN("income");

TEST_CASE("surrogate population is deterministic and heavy-tailed") {
  const FinitePopulation a = income_surrogate();
  const FinitePopulation b = income_surrogate();
  REQUIRE(a.values.size() == 842);
  CHECK(a.values == b.values);
  for (double v : a.values) {
    CHECK(v > 0.0);
    CHECK(v <= 1000.0);
  }
  const MomentSummary ms = compute_moments(DistributionSpec{a});
  CHECK(ms.skewness == doctest::Approx(5.07).epsilon(0.05));
  CHECK(*ms.excess_kurtosis == doctest::Approx(33.8).epsilon(0.10));
  CHECK(ms.mean > 50.0);
  CHECK(ms.mean < 150.0);
}

TEST_CASE("pipeline reproduces the sizing table with injected moments") {
  IncomeOptions opts;
  opts.inject_skewness = 5.070;
  opts.inject_ekurt = 33.81;
  const IncomeReport report =
      income_pipeline(DistributionSpec{income_surrogate()}, opts);

  const long long expected_n3[4][3] = {
      {197, 48, 3}, {788, 190, 9}, {19695, 4741, 218}, {78778, 18964, 872}};
  const long long expected_n34[4][3] = {
      {213, 90, 15}, {821, 279, 36}, {19858, 5219, 374}, {79104, 19929, 1199}};
  REQUIRE(report.table.size() == 12);
  for (std::size_t i = 0; i < report.table.size(); ++i) {
    const auto& cell = report.table[i];
    const std::size_t row = i / 3;
    const std::size_t col = i % 3;
    // tolerance covers the print rounding of lambda = 5.070 (cells scale
    // with lambda^2, so the largest ones move by a handful of units)
    const long long spread = std::llabs(n3_star(cell.z, cell.epsilon, 5.0705) -
                                        n3_star(cell.z, cell.epsilon, 5.0695));
    CHECK(std::llabs(cell.n3 - expected_n3[row][col]) <= std::max(1LL, spread));
    CHECK(std::fabs(static_cast<double>(cell.n34 - expected_n34[row][col])) <=
          0.01 * static_cast<double>(expected_n34[row][col]));
  }
  CHECK(report.n_nonneg_pdf == 232);
  CHECK(report.used_skewness == 5.070);
}

TEST_CASE("skew curves carry the documented anchor values") {
  IncomeOptions opts;
  opts.inject_skewness = 5.070;
  opts.inject_ekurt = 33.81;
  opts.n_list = {50, 100};
  const IncomeReport report =
      income_pipeline(DistributionSpec{income_surrogate()}, opts);
  REQUIRE(report.skew_curves.size() == 2);
  // value at z = 0 (middle of the grid)
  const std::size_t mid = report.z_grid.size() / 2;
  CHECK(report.z_grid[mid] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(report.skew_curves[0][mid] == doctest::Approx(0.0477).epsilon(2e-3));
  CHECK(report.skew_curves[1][mid] == doctest::Approx(0.0337).epsilon(2e-3));
}

TEST_CASE("error surface shrinks with n") {
  IncomeOptions opts;
  opts.inject_skewness = 5.070;
  opts.inject_ekurt = 33.81;
  const IncomeReport report =
      income_pipeline(DistributionSpec{income_surrogate()}, opts);
  REQUIRE(report.surface_n.size() == report.error_surface.size());
  const std::size_t mid = report.z_grid.size() / 2;
  double prev = INFINITY;
  for (std::size_t i = 0; i < report.surface_n.size(); ++i) {
    const double v = report.error_surface[i][mid];
    if (report.surface_n[i] >= 10) CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("quantile track runs when configured") {
  IncomeOptions opts;
  opts.sim = SimConfig{1, 20000, 99, 4};
  opts.track_n_list = {4, 10};
  const IncomeReport report =
      income_pipeline(DistributionSpec{income_surrogate()}, opts);
  REQUIRE(report.track.size() == 2);
  for (const auto& row : report.track) {
    CHECK(std::isfinite(row.cf_quantile));
    CHECK(std::isfinite(row.empirical_quantile));
    CHECK(row.band3se > 0.0);
    // loose sanity: both land in the upper tail
    CHECK(row.cf_quantile > 1.5);
    CHECK(row.empirical_quantile > 1.5);
  }
}

TEST_SUITE_END();
