#include "cltscope/income.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cltscope/cornish_fisher.hpp"
#include "cltscope/edgeworth.hpp"
#include "cltscope/errors.hpp"
#include "cltscope/sample_size.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

// Mixture fitted against the target moments; see income_surrogate() docs.
struct LognormalComponent {
  double weight;
  double log_mean;
  double log_sd;
};

constexpr LognormalComponent kComponents[2] = {
    {0.85, 4.119, 0.5116},
    {0.15, 4.5, 1.5947},
};
constexpr double kTruncationCap = 1000.0;  // $1M in $1k units

void append_stratified(const LognormalComponent& comp, std::size_t count,
                       std::vector<double>* out) {
  const double cap_q =
      std_normal_cdf((std::log(kTruncationCap) - comp.log_mean) / comp.log_sd);
  for (std::size_t i = 1; i <= count; ++i) {
    const double u = (static_cast<double>(i) - 0.5) / static_cast<double>(count);
    out->push_back(
        std::exp(comp.log_mean + comp.log_sd * std_normal_quantile(u * cap_q)));
  }
}

}  // namespace

FinitePopulation income_surrogate(std::size_t size) {
  if (size < 2) {
    throw InvalidInputError("income_surrogate: size must be at least 2");
  }
  FinitePopulation pop;
  pop.values.reserve(size);
  const auto first =
      static_cast<std::size_t>(std::llround(kComponents[0].weight *
                                            static_cast<double>(size)));
  append_stratified(kComponents[0], first, &pop.values);
  append_stratified(kComponents[1], size - first, &pop.values);
  std::sort(pop.values.begin(), pop.values.end());
  return pop;
}

IncomeReport income_pipeline(const DistributionSpec& population,
                             const IncomeOptions& opts) {
  IncomeReport report;
  report.moments = compute_moments(population);

  MomentSummary working = report.moments;
  if (opts.inject_skewness) working.skewness = *opts.inject_skewness;
  if (opts.inject_ekurt) working.excess_kurtosis = *opts.inject_ekurt;
  validate(working);
  if (!working.excess_kurtosis) {
    throw MissingMomentError("income_pipeline: excess kurtosis unavailable");
  }
  report.used_skewness = working.skewness;
  report.used_ekurt = *working.excess_kurtosis;

  // Sample-size matrix over (epsilon, quantile).
  for (double eps : opts.epsilon_list) {
    for (double p : opts.quantile_list) {
      SampleSizeCell cell;
      cell.quantile = p;
      cell.z = std_normal_quantile(p);
      cell.epsilon = eps;
      cell.n3 = n3_star(cell.z, eps, working.skewness);
      cell.n34 = n34_star(cell.z, eps, working);
      report.table.push_back(cell);
    }
  }

  // Positivity threshold of the one-term PDF approximation.
  report.z_star = opts.z_star;
  report.n_nonneg_pdf = min_n_nonneg_pdf(working.skewness, opts.z_star);

  // Skewness-correction curves and the |two-term error| surface.
  constexpr int kCurvePoints = 141;
  report.z_grid.reserve(kCurvePoints);
  for (int i = 0; i < kCurvePoints; ++i) {
    report.z_grid.push_back(-3.5 + 7.0 * static_cast<double>(i) /
                                       (kCurvePoints - 1));
  }
  for (long long n : opts.n_list) {
    std::vector<double> curve;
    curve.reserve(report.z_grid.size());
    for (double z : report.z_grid) {
      curve.push_back(cdf_term_skew(n, z, working.skewness));
    }
    report.skew_curves.push_back(std::move(curve));
  }

  std::set<long long> surface_n;
  for (int i = 0; i <= 40; ++i) {
    surface_n.insert(static_cast<long long>(
        std::llround(std::pow(10.0, static_cast<double>(i) * 5.0 / 40.0))));
  }
  report.surface_n.assign(surface_n.begin(), surface_n.end());
  for (long long n : report.surface_n) {
    std::vector<double> row;
    row.reserve(report.z_grid.size());
    for (double z : report.z_grid) {
      row.push_back(std::fabs(
          cdf_term_skew(n, z, working.skewness) +
          cdf_term_skew_kurt(n, z, working.skewness, *working.excess_kurtosis)));
    }
    report.error_surface.push_back(std::move(row));
  }

  // Monte Carlo vs Cornish-Fisher quantile track.
  if (opts.sim) {
    for (long long n : opts.track_n_list) {
      SimConfig cfg = *opts.sim;
      cfg.n = n;
      std::vector<double> sample = simulate_standardized_means(population, cfg);
      std::sort(sample.begin(), sample.end());
      QuantileTrackRow row;
      row.n = n;
      ApproxQuery query;
      query.n = n;
      query.point = opts.track_p;
      query.order = ApproxOrder::kOrderN;
      row.cf_quantile = cf_quantile(query, working);
      row.empirical_quantile = empirical_quantile(sample, opts.track_p);
      row.band3se = quantile_se_halfwidth(sample, opts.track_p, 3.0);
      report.track.push_back(row);
    }
  }
  return report;
}

}  // namespace cltscope
