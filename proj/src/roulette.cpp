#include "cltscope/roulette.hpp"

#include <cmath>

#include "cltscope/binomial.hpp"
#include "cltscope/edgeworth.hpp"
#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

// Win-count threshold: S_n > eps  <=>  T_n > (eps - lose*n)/(win - lose).
// Returns the largest win count NOT exceeding the threshold, snapping
// near-integral ratios upward so that an attainable S_n = eps atom lands in
// the excluded (<=) side despite floating-point drift.
long long win_count_threshold(const BetSpec& bet, long long n, double epsilon) {
  const double ratio = (epsilon - bet.lose_value * static_cast<double>(n)) /
                       (bet.win_value - bet.lose_value);
  double k = std::floor(ratio);
  if (ratio - k > 1.0 - 1e-9) k += 1.0;
  return static_cast<long long>(k);
}

}  // namespace

BetSpec red_or_black_bet() { return {-1.0, +1.0, 18.0 / 38.0, "red-or-black"}; }

BetSpec single_number_bet() { return {-1.0, +35.0, 1.0 / 38.0, "single-number"}; }

void validate(const BetSpec& bet) {
  validate(DistributionSpec{bet.to_two_point()});
}

double theta_exact(const BetSpec& bet, long long n, double epsilon) {
  validate(bet);
  if (n < 1) {
    throw InvalidInputError("theta_exact: n must be at least 1");
  }
  if (!(epsilon >= 0.0 && epsilon < bet.win_value)) {
    throw InvalidInputError("theta_exact: epsilon must lie in [0, win_value)");
  }
  const long long k = win_count_threshold(bet, n, epsilon);
  return 1.0 - binomial_cdf(n, bet.win_prob, k);
}

double theta_approx(const BetSpec& bet, long long n, double epsilon,
                    const ThetaCorrections& corrections, const ZigzagConfig& cfg) {
  validate(bet);
  if (n < 1) {
    throw InvalidInputError("theta_approx: n must be at least 1");
  }
  const DistributionSpec spec{bet.to_two_point()};
  const MomentSummary ms = compute_moments(spec);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double z =
      (epsilon / static_cast<double>(n) - ms.mean) * root_n / ms.sd;

  double cdf = std_normal_cdf(z);
  if (corrections.skewness) {
    cdf += cdf_term_skew(n, z, ms.skewness);
  }
  if (corrections.lattice) {
    const LatticeSpec lat = minimal_lattice(spec);
    cdf += lattice_cdf_term(n, z, lat, cfg);
  }
  return 1.0 - cdf;
}

double theta_lattice_term(const BetSpec& bet, long long n, double epsilon,
                          const ZigzagConfig& cfg) {
  const DistributionSpec spec{bet.to_two_point()};
  const MomentSummary ms = compute_moments(spec);
  const LatticeSpec lat = minimal_lattice(spec);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double z =
      (epsilon / static_cast<double>(n) - ms.mean) * root_n / ms.sd;
  return lattice_cdf_term(n, z, lat, cfg);
}

SinglePlayFacts single_play_facts(const BetSpec& bet, long long n) {
  validate(bet);
  if (n < 1) {
    throw InvalidInputError("single_play_facts: n must be at least 1");
  }
  SinglePlayFacts facts;
  facts.expected_net_gain_per_play =
      bet.win_prob * bet.win_value + (1.0 - bet.win_prob) * bet.lose_value;
  facts.expected_house_take =
      -static_cast<double>(n) * facts.expected_net_gain_per_play;

  double best_p = -1.0;
  long long best_k = 0;
  for (long long k = 0; k <= n; ++k) {
    const double pk = binomial_pmf(n, bet.win_prob, k);
    if (pk > best_p) {
      best_p = pk;
      best_k = k;
    }
  }
  facts.most_likely_outcome_prob = best_p;
  facts.most_likely_outcome =
      bet.lose_value * static_cast<double>(n) +
      (bet.win_value - bet.lose_value) * static_cast<double>(best_k);

  // S_n = +1 requires an integral win count at (1 - lose*n)/(win - lose).
  const double ratio = (1.0 - bet.lose_value * static_cast<double>(n)) /
                       (bet.win_value - bet.lose_value);
  const double rounded = std::round(ratio);
  if (std::fabs(ratio - rounded) < 1e-9 && rounded >= 0.0 &&
      rounded <= static_cast<double>(n)) {
    facts.prob_net_plus_one =
        binomial_pmf(n, bet.win_prob, static_cast<long long>(rounded));
  } else {
    facts.prob_net_plus_one = 0.0;
  }
  return facts;
}

std::vector<RouletteResult> roulette_sweep(const BetSpec& bet, long long n_max,
                                           double epsilon, const ZigzagConfig& cfg) {
  if (n_max < 1) {
    throw InvalidInputError("roulette_sweep: n_max must be at least 1");
  }
  std::vector<RouletteResult> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (long long n = 1; n <= n_max; ++n) {
    RouletteResult row;
    row.n = n;
    row.epsilon = epsilon;
    row.theta_exact = theta_exact(bet, n, epsilon);
    row.theta_o1 = theta_approx(bet, n, epsilon, {false, false}, cfg);
    row.theta_skew = theta_approx(bet, n, epsilon, {true, false}, cfg);
    row.theta_skew_lattice = theta_approx(bet, n, epsilon, {true, true}, cfg);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cltscope
