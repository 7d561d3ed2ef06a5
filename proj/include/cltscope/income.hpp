#pragma once

#include <optional>
#include <vector>

#include "cltscope/distribution.hpp"
#include "cltscope/simulation.hpp"

namespace cltscope {

// Deterministic stand-in for a heavily right-skewed income population
// (units: $1,000). Stratified quantiles of a two-component lognormal
// mixture, truncated at $1M; the parameters were fitted so the population
// moments land near (skewness, excess kurtosis) = (5.07, 33.8) with a
// median around $62k. No randomness: the same size always yields the same
// values.
FinitePopulation income_surrogate(std::size_t size = 842);

struct IncomeOptions {
  std::vector<double> epsilon_list = {0.01, 0.005, 0.001, 0.0005};
  std::vector<double> quantile_list = {0.975, 0.995, 0.9995};  // probabilities
  std::vector<long long> n_list = {50, 100};                   // curve overlays
  double z_star = -3.0;  // left-tail guard for the PDF positivity threshold
  // When set, these replace the population's computed skewness / excess
  // kurtosis in every derived quantity (the moments block still reports the
  // population values).
  std::optional<double> inject_skewness;
  std::optional<double> inject_ekurt;
  // Monte Carlo quantile track (optional; costly).
  std::optional<SimConfig> sim;
  std::vector<long long> track_n_list = {4, 10, 25, 50};
  double track_p = 0.9995;
};

struct SampleSizeCell {
  double quantile;  // the probability p defining z = Phi^-1(p)
  double z;
  double epsilon;
  long long n3;
  long long n34;
};

struct QuantileTrackRow {
  long long n;
  double cf_quantile;         // skewness+kurtosis Cornish-Fisher value
  double empirical_quantile;  // from the Monte Carlo sample
  double band3se;             // 3-standard-error half width (order statistics)
};

struct IncomeReport {
  MomentSummary moments;           // of the population as given
  double used_skewness;            // after any injection
  double used_ekurt;
  std::vector<SampleSizeCell> table;
  long long n_nonneg_pdf;          // PDF positivity threshold at z_star
  double z_star;
  std::vector<double> z_grid;                        // abscissae for curves
  std::vector<std::vector<double>> skew_curves;      // one row per n_list entry
  std::vector<long long> surface_n;                  // log-spaced n values
  std::vector<std::vector<double>> error_surface;    // |skew+kurt terms|, row per n
  std::vector<QuantileTrackRow> track;               // empty unless sim given
};

IncomeReport income_pipeline(const DistributionSpec& population,
                             const IncomeOptions& opts);

}  // namespace cltscope
