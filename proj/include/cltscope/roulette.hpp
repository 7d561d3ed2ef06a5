#pragma once

#include <string>
#include <vector>

#include "cltscope/distribution.hpp"
#include "cltscope/lattice.hpp"

namespace cltscope {

// A repeated 1-unit wager: net gain win_value with probability win_prob,
// net loss lose_value otherwise.
struct BetSpec {
  double lose_value;
  double win_value;
  double win_prob;
  std::string name;

  TwoPoint to_two_point() const { return {lose_value, win_value, win_prob}; }
};

// American-roulette presets.
BetSpec red_or_black_bet();   // (-1, +1, 18/38)
BetSpec single_number_bet();  // (-1, +35, 1/38)

void validate(const BetSpec& bet);

// P(S_n > epsilon) for the cumulative net gain S_n after n plays, computed
// exactly through the Binomial CDF of the win count. The atom at exactly
// epsilon (when attainable) is excluded: coming out ahead means a strict
// gain.
double theta_exact(const BetSpec& bet, long long n, double epsilon = 0.0);

// Which corrections to add on top of the plain Normal tail.
struct ThetaCorrections {
  bool skewness = false;
  bool lattice = false;
};

// CLT approximation of the same probability: 1 - [Phi(z*) + optional skew
// term + optional lattice term] at z* = (epsilon/n - mu) * sqrt(n) / sigma.
double theta_approx(const BetSpec& bet, long long n, double epsilon,
                    const ThetaCorrections& corrections,
                    const ZigzagConfig& cfg = {});

// The lattice term alone at the theta evaluation point (diagnostics).
double theta_lattice_term(const BetSpec& bet, long long n, double epsilon,
                          const ZigzagConfig& cfg = {});

struct SinglePlayFacts {
  double expected_net_gain_per_play;  // p*win + (1-p)*lose
  double expected_house_take;         // -n * expected net gain
  double most_likely_outcome_prob;    // modal probability of S_n
  double most_likely_outcome;         // the modal S_n value
  double prob_net_plus_one;           // P(S_n = +1), 0 when unattainable
};

SinglePlayFacts single_play_facts(const BetSpec& bet, long long n);

// One row per n for the sweep commands: exact theta plus the ladder of
// approximations.
struct RouletteResult {
  long long n;
  double epsilon;
  double theta_exact;
  double theta_o1;
  double theta_skew;
  double theta_skew_lattice;
};

std::vector<RouletteResult> roulette_sweep(const BetSpec& bet, long long n_max,
                                           double epsilon,
                                           const ZigzagConfig& cfg = {});

}  // namespace cltscope
