#include "cltscope/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cltscope/errors.hpp"

namespace cltscope {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kFeasibilityTol = 1e-9;

// One (value, probability) view over any DistributionSpec variant.
std::vector<std::pair<double, double>> atoms_of(const DistributionSpec& dist) {
  std::vector<std::pair<double, double>> atoms;
  if (const auto* pop = std::get_if<FinitePopulation>(&dist)) {
    const double w = 1.0 / static_cast<double>(pop->values.size());
    atoms.reserve(pop->values.size());
    for (double v : pop->values) atoms.emplace_back(v, w);
  } else if (const auto* pmf = std::get_if<FinitePmf>(&dist)) {
    atoms.reserve(pmf->support.size());
    for (std::size_t i = 0; i < pmf->support.size(); ++i) {
      atoms.emplace_back(pmf->support[i], pmf->probs[i]);
    }
  } else {
    const auto& tp = std::get<TwoPoint>(dist);
    atoms.emplace_back(tp.lose_value, 1.0 - tp.win_prob);
    atoms.emplace_back(tp.win_value, tp.win_prob);
  }
  return atoms;
}

// Best rational approximation p/q with q <= max_den, by continued
// fractions. Returns false if no convergent lands within tol.
bool snap_to_rational(double x, long long max_den, double tol, long long* num,
                      long long* den) {
  if (std::fabs(x) > 9e15) return false;  // numerator would overflow
  double v = x;
  long long p_prev = 1, q_prev = 0;
  long long p_cur = static_cast<long long>(std::floor(v));
  long long q_cur = 1;
  v -= std::floor(v);
  for (int iter = 0; iter < 64; ++iter) {
    const double approx = static_cast<double>(p_cur) / static_cast<double>(q_cur);
    if (std::fabs(approx - x) <= tol) {
      *num = p_cur;
      *den = q_cur;
      return true;
    }
    if (v < 1e-18) break;
    v = 1.0 / v;
    const double a_f = std::floor(v);
    if (a_f > 4e18) break;
    const long long a = static_cast<long long>(a_f);
    v -= a_f;
    const long long p_next = a * p_cur + p_prev;
    const long long q_next = a * q_cur + q_prev;
    if (q_next > max_den || q_next <= 0) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return false;
}

long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Rational {
  long long num;
  long long den;  // > 0

  void reduce() {
    const long long g = gcd_ll(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

}  // namespace

void validate(const MomentSummary& ms) {
  if (!std::isfinite(ms.mean) || !std::isfinite(ms.sd) || !std::isfinite(ms.skewness)) {
    throw InvalidInputError("MomentSummary: fields must be finite");
  }
  if (!(ms.sd > 0.0)) {
    throw InvalidInputError("MomentSummary: sd must be positive");
  }
  if (ms.excess_kurtosis) {
    if (!std::isfinite(*ms.excess_kurtosis)) {
      throw InvalidInputError("MomentSummary: excess kurtosis must be finite");
    }
    if (*ms.excess_kurtosis < ms.skewness * ms.skewness - 2.0 - kFeasibilityTol) {
      throw InvalidInputError(
          "MomentSummary: excess kurtosis violates the feasibility bound "
          "eta >= lambda^2 - 2");
    }
  }
  if (ms.abs_third_std_moment) {
    if (*ms.abs_third_std_moment < std::fabs(ms.skewness) - kFeasibilityTol) {
      throw InvalidInputError(
          "MomentSummary: E|Z|^3 cannot be smaller than |skewness|");
    }
  }
}

void validate(const DistributionSpec& dist) {
  if (const auto* pop = std::get_if<FinitePopulation>(&dist)) {
    if (pop->values.empty()) {
      throw InvalidInputError("FinitePopulation: values must be non-empty");
    }
    for (double v : pop->values) {
      if (!std::isfinite(v)) {
        throw InvalidInputError("FinitePopulation: values must be finite");
      }
    }
    const double first = pop->values.front();
    const bool all_equal = std::all_of(pop->values.begin(), pop->values.end(),
                                       [&](double v) { return v == first; });
    if (pop->values.size() < 2 || all_equal) {
      throw InvalidInputError(
          "FinitePopulation: needs at least 2 distinct values");
    }
  } else if (const auto* pmf = std::get_if<FinitePmf>(&dist)) {
    if (pmf->support.empty() || pmf->support.size() != pmf->probs.size()) {
      throw InvalidInputError(
          "FinitePmf: support and probs must be non-empty and equal length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pmf->support.size(); ++i) {
      if (!std::isfinite(pmf->support[i])) {
        throw InvalidInputError("FinitePmf: support must be finite");
      }
      if (i > 0 && !(pmf->support[i] > pmf->support[i - 1])) {
        throw InvalidInputError("FinitePmf: support must be strictly increasing");
      }
      if (!(pmf->probs[i] >= 0.0)) {
        throw InvalidInputError("FinitePmf: probabilities must be non-negative");
      }
      sum += pmf->probs[i];
    }
    if (std::fabs(sum - 1.0) > kProbSumTol) {
      throw InvalidInputError("FinitePmf: probabilities must sum to 1");
    }
  } else {
    const auto& tp = std::get<TwoPoint>(dist);
    if (!std::isfinite(tp.lose_value) || !std::isfinite(tp.win_value)) {
      throw InvalidInputError("TwoPoint: values must be finite");
    }
    if (!(tp.lose_value < tp.win_value)) {
      throw InvalidInputError("TwoPoint: requires lose_value < win_value");
    }
    if (!(tp.win_prob > 0.0 && tp.win_prob < 1.0)) {
      throw InvalidInputError("TwoPoint: win probability must lie in (0,1)");
    }
  }
}

MomentSummary compute_moments(const DistributionSpec& dist) {
  validate(dist);
  const auto atoms = atoms_of(dist);

  double mean = 0.0;
  for (const auto& [v, w] : atoms) mean += w * v;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0, a3 = 0.0;
  for (const auto& [v, w] : atoms) {
    const double d = v - mean;
    m2 += w * d * d;
    m3 += w * d * d * d;
    m4 += w * d * d * d * d;
    a3 += w * std::fabs(d * d * d);
  }
  if (!(m2 > 0.0)) {
    throw DegenerateDistributionError(
        "compute_moments: distribution has zero variance");
  }
  const double sd = std::sqrt(m2);
  MomentSummary ms;
  ms.mean = mean;
  ms.sd = sd;
  ms.skewness = m3 / (m2 * sd);
  ms.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  ms.abs_third_std_moment = a3 / (m2 * sd);
  return ms;
}

MomentSummary moments_of_mean(const MomentSummary& ms, long long n) {
  // plain cumulant arithmetic; no feasibility requirement on the inputs
  if (!std::isfinite(ms.skewness) || !(ms.sd > 0.0)) {
    throw InvalidInputError("moments_of_mean: bad moment summary");
  }
  if (n < 1) {
    throw InvalidInputError("moments_of_mean: n must be at least 1");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  MomentSummary out;
  out.mean = ms.mean;
  out.sd = ms.sd / root_n;
  out.skewness = ms.skewness / root_n;
  if (ms.excess_kurtosis) {
    out.excess_kurtosis = *ms.excess_kurtosis / static_cast<double>(n);
  }
  return out;
}

long long naive_sample_size(const MomentSummary& ms, double delta_skew,
                            double delta_ekurt) {
  if (!std::isfinite(ms.skewness)) {
    throw InvalidInputError("naive_sample_size: bad moment summary");
  }
  if (!(delta_skew > 0.0) || !(delta_ekurt > 0.0)) {
    throw InvalidInputError("naive_sample_size: targets must be positive");
  }
  const double from_skew = (ms.skewness / delta_skew) * (ms.skewness / delta_skew);
  const double from_ekurt =
      ms.excess_kurtosis ? std::fabs(*ms.excess_kurtosis / delta_ekurt) : 0.0;
  const double n = std::ceil(std::max(from_skew, from_ekurt));
  return std::max(1LL, static_cast<long long>(n));
}

LatticeSpec minimal_lattice(const DistributionSpec& dist) {
  validate(dist);
  if (std::holds_alternative<FinitePopulation>(dist)) {
    throw LatticeUndefinedError(
        "minimal_lattice: a finite population carries no lattice structure");
  }

  std::vector<double> support;
  if (const auto* pmf = std::get_if<FinitePmf>(&dist)) {
    support = pmf->support;
  } else {
    const auto& tp = std::get<TwoPoint>(dist);
    support = {tp.lose_value, tp.win_value};
  }

  constexpr long long kMaxDen = 1000000;
  constexpr double kSnapTol = 1e-9;
  std::vector<Rational> rats;
  rats.reserve(support.size());
  for (double v : support) {
    long long num = 0, den = 1;
    if (!snap_to_rational(v, kMaxDen, kSnapTol * std::max(1.0, std::fabs(v)),
                          &num, &den)) {
      throw NonLatticeError(
          "minimal_lattice: support value " + std::to_string(v) +
          " is not representable as a rational with denominator <= 10^6");
    }
    Rational r{num, den};
    r.reduce();
    rats.push_back(r);
  }
  if (rats.size() < 2) {
    throw NonLatticeError(
        "minimal_lattice: span is undefined for a single support point");
  }

  // Bring all support points over one denominator; the span is then the
  // integer gcd of the gaps divided by that denominator.
  __int128 common_den = 1;
  for (const Rational& r : rats) {
    const long long g = gcd_ll(static_cast<long long>(common_den % r.den), r.den);
    common_den = common_den / g * r.den;
    if (common_den > static_cast<__int128>(4e18)) {
      throw NonLatticeError(
          "minimal_lattice: support denominators are too heterogeneous for an "
          "exact span");
    }
  }
  __int128 gap_gcd = 0;
  const __int128 base =
      static_cast<__int128>(rats[0].num) * (common_den / rats[0].den);
  for (std::size_t i = 1; i < rats.size(); ++i) {
    const __int128 scaled =
        static_cast<__int128>(rats[i].num) * (common_den / rats[i].den);
    __int128 gap = scaled - base;
    if (gap < 0) gap = -gap;
    __int128 a = gap_gcd, b = gap;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    gap_gcd = a;
  }

  LatticeSpec lat;
  lat.offset = support.front();
  lat.span = static_cast<double>(gap_gcd) / static_cast<double>(common_den);
  const MomentSummary ms = compute_moments(dist);
  lat.std_offset = (lat.offset - ms.mean) / ms.sd;
  lat.std_span = lat.span / ms.sd;
  return lat;
}

FinitePopulation read_population_csv(const std::string& path, bool expect_header) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("read_population_csv: cannot open '" + path + "'");
  }
  FinitePopulation pop;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && expect_header) continue;
    // tolerate trailing \r from CRLF files and skip blank lines
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &pos);
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "not a number: '" + line + "'");
    }
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos != line.size()) {
      throw ParseError(path, line_no, "trailing junk after number: '" + line + "'");
    }
    if (!std::isfinite(v)) {
      throw ParseError(path, line_no, "non-finite value");
    }
    pop.values.push_back(v);
  }
  if (pop.values.empty()) {
    throw ParseError(path, line_no, "no data rows found");
  }
  return pop;
}

}  // namespace cltscope
