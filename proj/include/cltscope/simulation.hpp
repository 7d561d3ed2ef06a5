#pragma once

#include <cstdint>
#include <vector>

#include "cltscope/distribution.hpp"

namespace cltscope {

// Monte Carlo configuration. Results are a pure function of
// (seed, n, replicates) — `parallel_chunks` only controls how the replicate
// range is split across threads and never changes a single output value.
struct SimConfig {
  long long n = 1;
  long long replicates = 1000000;
  std::uint64_t seed = 0;
  int parallel_chunks = 1;
};

void validate(const SimConfig& cfg);

// Reads CLT_SCOPE_THREADS (positive integer) and caps `requested` by it;
// returns `requested` when the variable is unset or unparsable.
int cap_parallel_chunks(int requested);

// Draws cfg.replicates means of cfg.n IID values from `dist` and returns
// each standardized with the exact population moments:
//   (mean - mu) * sqrt(n) / sigma.
// Replicate r consumes its own counter-based substream, so the output is
// bit-identical for any chunking.
std::vector<double> simulate_standardized_means(const DistributionSpec& dist,
                                                const SimConfig& cfg);

// Left-continuous inverse of the empirical CDF: the ceil(p*m)-th order
// statistic. The input need not be sorted.
double empirical_quantile(const std::vector<double>& sample, double p);

// Fraction of sample values strictly greater than z.
double empirical_tail_fraction(const std::vector<double>& sample, double z);

// Distribution-free half-width of a +/- k standard error band around the
// empirical p-quantile, from the order statistics at
// ceil(p*m) -/+ ceil(k*sqrt(m*p*(1-p))).
double quantile_se_halfwidth(const std::vector<double>& sorted_sample, double p,
                             double k);

}  // namespace cltscope
