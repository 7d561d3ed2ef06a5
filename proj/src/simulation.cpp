#include "cltscope/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "cltscope/errors.hpp"
#include "cltscope/philox.hpp"

namespace cltscope {

namespace {

// Inverse-CDF sampler over the atoms of a discrete spec. For a
// FinitePopulation the atoms are equally weighted, so indexing is direct.
class AtomSampler {
 public:
  explicit AtomSampler(const DistributionSpec& dist) {
    if (const auto* pop = std::get_if<FinitePopulation>(&dist)) {
      values_ = pop->values;
      uniform_ = true;
    } else if (const auto* pmf = std::get_if<FinitePmf>(&dist)) {
      values_ = pmf->support;
      cumulative_.reserve(pmf->probs.size());
      double acc = 0.0;
      for (double p : pmf->probs) {
        acc += p;
        cumulative_.push_back(acc);
      }
      cumulative_.back() = 1.0;
    } else {
      const auto& tp = std::get<TwoPoint>(dist);
      values_ = {tp.lose_value, tp.win_value};
      cumulative_ = {1.0 - tp.win_prob, 1.0};
    }
  }

  double operator()(double u) const {
    if (uniform_) {
      auto idx = static_cast<std::size_t>(u * static_cast<double>(values_.size()));
      if (idx >= values_.size()) idx = values_.size() - 1;
      return values_[idx];
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative_.begin()), values_.size() - 1);
    return values_[idx];
  }

 private:
  std::vector<double> values_;
  std::vector<double> cumulative_;
  bool uniform_ = false;
};

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n < 1) {
    throw InvalidInputError("SimConfig: n must be at least 1");
  }
  if (cfg.replicates < 1) {
    throw InvalidInputError("SimConfig: replicates must be at least 1");
  }
  if (cfg.parallel_chunks < 1) {
    throw InvalidInputError("SimConfig: parallel_chunks must be at least 1");
  }
}

int cap_parallel_chunks(int requested) {
  const char* env = std::getenv("CLT_SCOPE_THREADS");
  if (env == nullptr) return requested;
  char* end = nullptr;
  const long cap = std::strtol(env, &end, 10);
  if (end == env || cap < 1) return requested;
  return static_cast<int>(std::min<long>(requested, cap));
}

std::vector<double> simulate_standardized_means(const DistributionSpec& dist,
                                                const SimConfig& cfg) {
  validate(dist);
  validate(cfg);
  const MomentSummary ms = compute_moments(dist);  // rejects degenerate specs
  const AtomSampler sampler(dist);

  const double inv_n = 1.0 / static_cast<double>(cfg.n);
  const double scale = std::sqrt(static_cast<double>(cfg.n)) / ms.sd;
  std::vector<double> out(static_cast<std::size_t>(cfg.replicates));

  const auto run_range = [&](long long lo, long long hi) {
    for (long long r = lo; r < hi; ++r) {
      UniformStream stream(cfg.seed, static_cast<std::uint64_t>(r));
      double sum = 0.0;
      for (long long i = 0; i < cfg.n; ++i) sum += sampler(stream.next());
      out[static_cast<std::size_t>(r)] = (sum * inv_n - ms.mean) * scale;
    }
  };

  const int chunks = std::max(
      1, std::min<int>(cap_parallel_chunks(cfg.parallel_chunks),
                       static_cast<int>(std::min<long long>(
                           cfg.replicates, std::thread::hardware_concurrency()
                                               ? std::thread::hardware_concurrency()
                                               : 1))));
  if (chunks == 1) {
    run_range(0, cfg.replicates);
    return out;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(chunks));
  const long long per = (cfg.replicates + chunks - 1) / chunks;
  for (int c = 0; c < chunks; ++c) {
    const long long lo = static_cast<long long>(c) * per;
    const long long hi = std::min(cfg.replicates, lo + per);
    if (lo >= hi) break;
    workers.emplace_back(run_range, lo, hi);
  }
  for (auto& w : workers) w.join();
  return out;
}

double empirical_quantile(const std::vector<double>& sample, double p) {
  if (sample.empty()) {
    throw InvalidInputError("empirical_quantile: sample must be non-empty");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInputError("empirical_quantile: p must lie in (0,1)");
  }
  const double m = static_cast<double>(sample.size());
  double ranks = p * m;
  // snap ranks that are integral up to rounding, so p = k/m picks exactly
  // the k-th order statistic
  if (std::fabs(ranks - std::round(ranks)) < 1e-9) ranks = std::round(ranks);
  const auto k = static_cast<std::size_t>(std::ceil(ranks));
  const std::size_t idx = std::max<std::size_t>(1, k) - 1;
  std::vector<double> copy(sample);
  std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(idx),
                   copy.end());
  return copy[idx];
}

double empirical_tail_fraction(const std::vector<double>& sample, double z) {
  if (sample.empty()) {
    throw InvalidInputError("empirical_tail_fraction: sample must be non-empty");
  }
  const auto count = std::count_if(sample.begin(), sample.end(),
                                   [&](double x) { return x > z; });
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

double quantile_se_halfwidth(const std::vector<double>& sorted_sample, double p,
                             double k) {
  const auto m = sorted_sample.size();
  if (m < 2) {
    throw InvalidInputError("quantile_se_halfwidth: sample too small");
  }
  const double md = static_cast<double>(m);
  const double center = std::ceil(p * md);
  const double delta = std::ceil(k * std::sqrt(md * p * (1.0 - p)));
  const auto clamp = [&](double r) {
    return static_cast<std::size_t>(std::clamp(r, 1.0, md)) - 1;
  };
  const double lo = sorted_sample[clamp(center - delta)];
  const double hi = sorted_sample[clamp(center + delta)];
  return 0.5 * (hi - lo);
}

}  // namespace cltscope
