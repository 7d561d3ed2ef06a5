#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cltscope {

// Cumulant fingerprint of a sampling distribution: mean and SD in the
// original units, skewness / excess kurtosis / absolute third moment of the
// standardized variable. `excess_kurtosis` and `abs_third_std_moment` are
// optional so that summaries built from partial information (e.g. a caller
// who only knows the skewness) remain representable; operations that need
// the missing piece raise MissingMomentError.
struct MomentSummary {
  double mean = 0.0;
  double sd = 1.0;
  double skewness = 0.0;
  std::optional<double> excess_kurtosis;
  std::optional<double> abs_third_std_moment;
};

// Checks sd > 0, the moment feasibility bound eta >= lambda^2 - 2, and
// rho >= |lambda| when the optional fields are present.
void validate(const MomentSummary& ms);

// An empirical population sampled IID with replacement. Treated as a
// uniform PMF over `values` (population moments, no sample correction).
struct FinitePopulation {
  std::vector<double> values;
};

// Explicit finite PMF with strictly increasing support.
struct FinitePmf {
  std::vector<double> support;
  std::vector<double> probs;
};

// Two-outcome wager: net gain `win_value` with probability `win_prob`,
// otherwise `lose_value`. Requires lose_value < win_value.
struct TwoPoint {
  double lose_value;
  double win_value;
  double win_prob;
};

using DistributionSpec = std::variant<FinitePopulation, FinitePmf, TwoPoint>;

void validate(const DistributionSpec& dist);

// Minimal lattice of a discrete distribution: support contained in
// {offset + k*span} with span maximal, plus the standardized pair
// (offset - mean)/sd and span/sd.
struct LatticeSpec {
  double offset = 0.0;
  double span = 1.0;
  double std_offset = 0.0;
  double std_span = 1.0;
};

// Population moments: mean, SD, skewness, excess kurtosis and E|Z|^3 of the
// given distribution. Throws DegenerateDistributionError when the variance
// vanishes.
MomentSummary compute_moments(const DistributionSpec& dist);

// Moment summary of the mean of n IID draws: SD shrinks by sqrt(n),
// skewness by sqrt(n), excess kurtosis by n. The absolute-third-moment
// field does not transform this way and is dropped.
MomentSummary moments_of_mean(const MomentSummary& ms, long long n);

// Smallest n driving |skewness(mean)| below delta_skew and
// |excess kurtosis(mean)| below delta_ekurt, clamped to at least 1.
long long naive_sample_size(const MomentSummary& ms, double delta_skew,
                            double delta_ekurt);

// Minimal lattice of a FinitePmf or TwoPoint. Support values are snapped to
// rationals with denominator at most 10^6 (tolerance 1e-9); the span is the
// exact gcd of the support gaps in that representation. FinitePopulation
// has no lattice notion (LatticeUndefinedError); support that does not snap
// raises NonLatticeError.
LatticeSpec minimal_lattice(const DistributionSpec& dist);

// Reads a single-column numeric CSV into a FinitePopulation.
// `expect_header` skips (and requires) one header line. Malformed rows
// raise ParseError naming the line.
FinitePopulation read_population_csv(const std::string& path, bool expect_header);

}  // namespace cltscope
