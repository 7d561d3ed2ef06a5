#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "cltscope/binomial.hpp"
#include "cltscope/distances.hpp"
#include "cltscope/distribution.hpp"
#include "cltscope/errors.hpp"
#include "cltscope/grid_function.hpp"
#include "cltscope/special_functions.hpp"

using namespace cltscope;

namespace {

GridFunction gaussian_cdf_table(double mean, double sd,
                                const std::vector<double>& grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double z : grid) values.push_back(std_normal_cdf((z - mean) / sd));
  return GridFunction::cdf(grid, values);
}

GridFunction gaussian_pdf_table(double mean, double sd,
                                const std::vector<double>& grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double z : grid) values.push_back(std_normal_pdf((z - mean) / sd) / sd);
  return GridFunction::pdf(grid, values);
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  return grid;
}

}  // namespace

TEST_SUITE_BEGIN("distances");

TEST_CASE("identical inputs give zero everywhere") {
  const auto grid = default_comparison_grid();
  const GridFunction F = gaussian_cdf_table(0.0, 1.0, grid);
  const GridFunction f = gaussian_pdf_table(0.0, 1.0, grid);
  CHECK(ks_distance(F, F) == 0.0);
  CHECK(wkr_distance(F, F) == 0.0);
  CHECK(hellinger(f, f) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(bhattacharyya(f, f).coefficient == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bhattacharyya(f, f).distance == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::fabs(kl_divergence(f, f).divergence) <= 1e-12);
  CHECK(js_metric(f, f) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("shifted gaussian closed forms") {
  const auto grid = default_comparison_grid();
  const GridFunction F = gaussian_cdf_table(0.0, 1.0, grid);
  const GridFunction F_shift01 = gaussian_cdf_table(0.1, 1.0, grid);
  const GridFunction F_shift025 = gaussian_cdf_table(0.25, 1.0, grid);
  // sup of Phi(z) - Phi(z - delta) sits at delta/2
  const double ks = ks_distance(F, F_shift01);
  CHECK(std::fabs(ks - (2.0 * std_normal_cdf(0.05) - 1.0)) <= 2e-4);
  CHECK(std::fabs(ks - 0.03988) <= 2e-4);
  // equal-shape shift: the area between the CDFs is exactly the shift
  CHECK(std::fabs(wkr_distance(F, F_shift025) - 0.25) <= 1e-3);

  const GridFunction f = gaussian_pdf_table(0.0, 1.0, grid);
  const GridFunction f_shift = gaussian_pdf_table(1.0, 1.0, grid);
  // BC = exp(-delta^2/8), KL = delta^2/2
  CHECK(std::fabs(bhattacharyya(f, f_shift).coefficient - 0.88250) <= 1e-3);
  CHECK(std::fabs(kl_divergence(f, f_shift).divergence - 0.5) <= 2e-3);
  CHECK(hellinger(f, f_shift) ==
        doctest::Approx(std::sqrt(1.0 - 0.8825)).epsilon(1e-3));
}

TEST_CASE("two-atom step cdfs") {
  const GridFunction F = step_cdf({0.0, 1.0}, {0.5, 1.0}, -1.0, 2.0);
  const GridFunction G = step_cdf({0.0, 1.0}, {0.3, 1.0}, -1.0, 2.0);
  CHECK(ks_distance(F, G) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(ks_distance(F, F) == 0.0);
}

TEST_CASE("wkr quantile form agrees for invertible pairs") {
  // int |F^-1 - G^-1| dp over (0,1) equals the shift for equal shapes
  const double delta = 0.25;
  double integral = 0.0;
  const int points = 20001;
  double prev_p = 1e-4;
  double prev_v = std::fabs(delta);
  for (int i = 1; i < points; ++i) {
    const double p =
        1e-4 + (1.0 - 2e-4) * static_cast<double>(i) / (points - 1);
    const double v =
        std::fabs(std_normal_quantile(p) - (std_normal_quantile(p) + delta));
    integral += 0.5 * (v + prev_v) * (p - prev_p);
    prev_p = p;
    prev_v = v;
  }
  const auto grid = default_comparison_grid();
  const GridFunction F = gaussian_cdf_table(0.0, 1.0, grid);
  const GridFunction G = gaussian_cdf_table(delta, 1.0, grid);
  CHECK(std::fabs(wkr_distance(F, G) - integral) <= 1e-3);
}

TEST_CASE("hellinger identity against its own integral") {
  const auto grid = default_comparison_grid();
  const GridFunction f = gaussian_pdf_table(0.0, 1.0, grid);
  const GridFunction g = gaussian_pdf_table(0.7, 1.2, grid);
  const double h = hellinger(f, g);
  const double bc = bhattacharyya(f, g).coefficient;
  CHECK(h * h + bc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kl components and asymmetry") {
  const auto grid = default_comparison_grid();
  const GridFunction f = gaussian_pdf_table(0.0, 1.0, grid);
  const GridFunction g = gaussian_pdf_table(0.0, 1.3, grid);
  const KlResult fg = kl_divergence(f, g);
  const KlResult gf = kl_divergence(g, f);
  // analytic: KL(N(0,1) || N(0,s^2)) = ln s + 1/(2 s^2) - 1/2
  const double s = 1.3;
  CHECK(std::fabs(fg.divergence - (std::log(s) + 0.5 / (s * s) - 0.5)) <= 2e-3);
  CHECK(std::fabs(gf.divergence - (-std::log(s) + 0.5 * s * s - 0.5)) <= 2e-3);
  CHECK(fg.divergence != gf.divergence);
  CHECK(fg.divergence ==
        doctest::Approx(fg.cross_entropy - fg.differential_entropy).epsilon(1e-10));
  CHECK(fg.divergence >= -1e-9);
}

TEST_CASE("kl support mismatch raises") {
  // f has mass on [2, 3] where g is identically zero
  const auto grid = uniform_grid(0.0, 4.0, 801);
  std::vector<double> fv(grid.size(), 0.0), gv(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] >= 2.0 && grid[i] <= 3.0) fv[i] = 1.0;
    if (grid[i] >= 0.5 && grid[i] <= 1.5) gv[i] = 1.0;
  }
  const GridFunction f = GridFunction::pdf(grid, fv);
  const GridFunction g = GridFunction::pdf(grid, gv);
  CHECK_THROWS_AS(kl_divergence(f, g), SupportMismatchError);
  // ... but the JS mixture never vanishes on either support
  CHECK_NOTHROW(js_metric(f, g));
}

TEST_CASE("js of disjoint step densities hits sqrt(ln 2)") {
  // steep-edged unit boxes on [0,1] and [2,3]
  std::vector<double> grid{-0.5, -1e-9, 0.0, 1.0, 1.0 + 1e-9,
                           2.0 - 1e-9, 2.0, 3.0, 3.0 + 1e-9, 3.5};
  std::vector<double> fv{0, 0, 1, 1, 0, 0, 0, 0, 0, 0};
  std::vector<double> gv{0, 0, 0, 0, 0, 0, 1, 1, 0, 0};
  const GridFunction f = GridFunction::pdf(grid, fv);
  const GridFunction g = GridFunction::pdf(grid, gv);
  const double js = js_metric(f, g);
  CHECK(std::fabs(js - std::sqrt(std::log(2.0))) <= 1e-6);
  CHECK(js <= std::sqrt(std::log(2.0)) + 1e-9);
  CHECK(js_metric(f, g) == js_metric(g, f));
}

TEST_CASE("symmetry of the symmetric metrics") {
  const auto grid = default_comparison_grid();
  const GridFunction F = gaussian_cdf_table(0.0, 1.0, grid);
  const GridFunction G = gaussian_cdf_table(0.4, 1.1, grid);
  CHECK(ks_distance(F, G) == ks_distance(G, F));
  CHECK(wkr_distance(F, G) == doctest::Approx(wkr_distance(G, F)).epsilon(1e-14));
  const GridFunction f = gaussian_pdf_table(0.0, 1.0, grid);
  const GridFunction g = gaussian_pdf_table(0.4, 1.1, grid);
  CHECK(hellinger(f, g) == hellinger(g, f));
  CHECK(js_metric(f, g) == js_metric(g, f));
}

TEST_CASE("grid refinement stability") {
  const auto coarse = default_comparison_grid();  // 4097 points
  const auto fine = uniform_grid(-8.0, 8.0, 8193);
  const auto rel_change = [](double a, double b) {
    return std::fabs(a - b) / std::max(1e-12, std::fabs(b));
  };
  {
    const GridFunction Fc = gaussian_cdf_table(0.0, 1.0, coarse);
    const GridFunction Gc = gaussian_cdf_table(0.3, 1.15, coarse);
    const GridFunction Ff = gaussian_cdf_table(0.0, 1.0, fine);
    const GridFunction Gf = gaussian_cdf_table(0.3, 1.15, fine);
    CHECK(rel_change(ks_distance(Fc, Gc), ks_distance(Ff, Gf)) <= 0.005);
    CHECK(rel_change(wkr_distance(Fc, Gc), wkr_distance(Ff, Gf)) <= 0.005);
  }
  {
    const GridFunction fc = gaussian_pdf_table(0.0, 1.0, coarse);
    const GridFunction gc = gaussian_pdf_table(0.3, 1.15, coarse);
    const GridFunction ff = gaussian_pdf_table(0.0, 1.0, fine);
    const GridFunction gf = gaussian_pdf_table(0.3, 1.15, fine);
    CHECK(rel_change(hellinger(fc, gc), hellinger(ff, gf)) <= 0.005);
    CHECK(rel_change(kl_divergence(fc, gc).divergence,
                     kl_divergence(ff, gf).divergence) <= 0.005);
    CHECK(rel_change(js_metric(fc, gc), js_metric(ff, gf)) <= 0.005);
  }
}

TEST_CASE("kind mismatch raises") {
  const auto grid = default_comparison_grid();
  const GridFunction F = gaussian_cdf_table(0.0, 1.0, grid);
  const GridFunction f = gaussian_pdf_table(0.0, 1.0, grid);
  CHECK_THROWS_AS(ks_distance(F, f), InvalidInputError);
  CHECK_THROWS_AS(wkr_distance(F, f), InvalidInputError);
  CHECK_THROWS_AS(hellinger(F, f), InvalidInputError);
  CHECK_THROWS_AS(kl_divergence(F, f), InvalidInputError);
}

TEST_CASE("wkr truncation guard") {
  // windows that miss the difference between the two CDFs
  const auto grid = uniform_grid(-1.0, 1.0, 401);
  const GridFunction F = gaussian_cdf_table(0.0, 1.0, grid);
  const GridFunction G = gaussian_cdf_table(0.5, 1.0, grid);
  CHECK_THROWS_AS(wkr_distance(F, G), TruncationError);
}

TEST_CASE("roulette exact-vs-normal KS falls with n") {
  for (const TwoPoint bet : {TwoPoint{-1.0, 1.0, 18.0 / 38.0},
                             TwoPoint{-1.0, 35.0, 1.0 / 38.0}}) {
    const MomentSummary ms = compute_moments(DistributionSpec{bet});
    double prev = INFINITY;
    for (long long n : {5LL, 25LL, 100LL, 400LL}) {
      std::vector<double> jumps, levels;
      const double root_n = std::sqrt(static_cast<double>(n));
      for (long long k = 0; k <= n; ++k) {
        const double s = bet.lose_value * static_cast<double>(n) +
                         (bet.win_value - bet.lose_value) * static_cast<double>(k);
        const double z = (s - ms.mean * static_cast<double>(n)) / (ms.sd * root_n);
        if (z < -8.5 || z > 8.5) continue;
        jumps.push_back(z);
        levels.push_back(binomial_cdf(n, bet.win_prob, k));
      }
      const GridFunction exact = step_cdf(jumps, levels, -9.0, 9.0);
      const GridFunction normal =
          gaussian_cdf_table(0.0, 1.0, default_comparison_grid());
      const double ks = ks_distance(exact, normal);
      CHECK(ks < prev);
      prev = ks;
    }
  }
}

TEST_CASE("grid function construction guards") {
  CHECK_THROWS_AS(GridFunction::cdf({0.0, 1.0}, {0.5}), InvalidInputError);
  CHECK_THROWS_AS(GridFunction::cdf({0.0, 0.0}, {0.1, 0.2}), InvalidInputError);
  CHECK_THROWS_AS(GridFunction::cdf({0.0, 1.0}, {0.8, 0.2}), InvalidInputError);
  CHECK_THROWS_AS(GridFunction::cdf({0.0, 1.0}, {0.5, 1.5}), InvalidInputError);
  CHECK_THROWS_AS(GridFunction::pdf({0.0, 1.0}, {-0.1, 2.1}), InvalidInputError);
  // mass far from 1 is rejected, truncation slack is not
  CHECK_THROWS_AS(GridFunction::pdf({0.0, 1.0}, {0.5, 0.5}), InvalidInputError);
  CHECK_NOTHROW(GridFunction::pdf({0.0, 1.0}, {0.99, 0.99}));
}

TEST_CASE("grid function csv round trip") {
  const auto grid = uniform_grid(-2.0, 2.0, 41);
  const GridFunction f = gaussian_pdf_table(0.0, 0.5, grid);
  const std::string path = "test_grid_tmp.csv";
  write_grid_function_csv(f, path);
  const GridFunction back = read_grid_function_csv(path);
  CHECK(back.kind() == GridFunction::Kind::kPdf);
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(back.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-10));
  }
  std::remove(path.c_str());
}

TEST_SUITE_END();
