#include "cltscope/distances.hpp"

#include <algorithm>
#include <cmath>

#include "cltscope/errors.hpp"

namespace cltscope {

namespace {

constexpr double kDensityFloor = 1e-300;
constexpr double kSupportThreshold = 1e-12;

void require_kind(const GridFunction& f, const GridFunction& g,
                  GridFunction::Kind kind, const char* who) {
  if (f.kind() != kind || g.kind() != kind) {
    throw InvalidInputError(std::string(who) + ": tabulation kind mismatch");
  }
}

// Union of both grids. Outside its own window a CDF evaluates to its end
// value and a PDF to zero, so the union never extrapolates.
std::vector<double> merged_grid(const GridFunction& f, const GridFunction& g) {
  std::vector<double> merged;
  merged.reserve(f.size() + g.size());
  std::merge(f.grid().begin(), f.grid().end(), g.grid().begin(), g.grid().end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    total += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  }
  return total;
}

// Integrand for KL: f * log(f/g) with the conventions 0*log(0/g) = 0 and a
// hard error when f is materially positive where g has no mass.
double kl_integrand(double fv, double gv, const char* who) {
  if (fv <= 0.0) return 0.0;
  if (gv < kDensityFloor) {
    if (fv > kSupportThreshold) {
      throw SupportMismatchError(
          std::string(who) +
          ": first density positive where second vanishes (KL is infinite)");
    }
    gv = kDensityFloor;
  }
  return fv * std::log(fv / gv);
}

}  // namespace

double ks_distance(const GridFunction& f, const GridFunction& g) {
  if (f.kind() != g.kind()) {
    throw InvalidInputError("ks_distance: tabulation kind mismatch");
  }
  const std::vector<double> xs = merged_grid(f, g);
  double sup = 0.0;
  for (double x : xs) {
    sup = std::max(sup, std::fabs(f(x) - g(x)));
  }
  return sup;
}

double wkr_distance(const GridFunction& f, const GridFunction& g) {
  require_kind(f, g, GridFunction::Kind::kCdf, "wkr_distance");
  const std::vector<double> xs = merged_grid(f, g);
  if (std::fabs(f(xs.front()) - g(xs.front())) > 1e-6 ||
      std::fabs(f(xs.back()) - g(xs.back())) > 1e-6) {
    throw TruncationError(
        "wkr_distance: |F-G| exceeds 1e-6 at a grid end; the tabulated window "
        "does not cover the difference");
  }
  std::vector<double> diff;
  diff.reserve(xs.size());
  for (double x : xs) diff.push_back(std::fabs(f(x) - g(x)));
  return trapezoid(xs, diff);
}

BhattacharyyaResult bhattacharyya(const GridFunction& f, const GridFunction& g) {
  require_kind(f, g, GridFunction::Kind::kPdf, "bhattacharyya");
  const std::vector<double> xs = merged_grid(f, g);
  std::vector<double> integrand;
  integrand.reserve(xs.size());
  for (double x : xs) {
    integrand.push_back(std::sqrt(std::max(0.0, f(x)) * std::max(0.0, g(x))));
  }
  double bc = trapezoid(xs, integrand);
  bc = std::min(bc, 1.0);
  return BhattacharyyaResult{bc, -std::log(bc)};
}

double hellinger(const GridFunction& f, const GridFunction& g) {
  const double bc = bhattacharyya(f, g).coefficient;
  return std::sqrt(std::max(0.0, 1.0 - bc));
}

KlResult kl_divergence(const GridFunction& f, const GridFunction& g) {
  require_kind(f, g, GridFunction::Kind::kPdf, "kl_divergence");
  const std::vector<double> xs = merged_grid(f, g);
  std::vector<double> kl_vals, cren_vals, de_vals;
  kl_vals.reserve(xs.size());
  cren_vals.reserve(xs.size());
  de_vals.reserve(xs.size());
  for (double x : xs) {
    const double fv = f(x);
    const double gv = g(x);
    kl_vals.push_back(kl_integrand(fv, gv, "kl_divergence"));
    cren_vals.push_back(fv > 0.0
                            ? -fv * std::log(std::max(gv, kDensityFloor))
                            : 0.0);
    de_vals.push_back(fv > 0.0 ? -fv * std::log(fv) : 0.0);
  }
  KlResult out;
  out.divergence = trapezoid(xs, kl_vals);
  out.cross_entropy = trapezoid(xs, cren_vals);
  out.differential_entropy = trapezoid(xs, de_vals);
  return out;
}

double js_metric(const GridFunction& f, const GridFunction& g) {
  require_kind(f, g, GridFunction::Kind::kPdf, "js_metric");
  const std::vector<double> xs = merged_grid(f, g);
  std::vector<double> integrand;
  integrand.reserve(xs.size());
  for (double x : xs) {
    const double fv = f(x);
    const double gv = g(x);
    const double mv = 0.5 * (fv + gv);
    integrand.push_back(0.5 * (kl_integrand(fv, mv, "js_metric") +
                               kl_integrand(gv, mv, "js_metric")));
  }
  const double mean_kl = trapezoid(xs, integrand);
  return std::sqrt(std::max(0.0, mean_kl));
}

}  // namespace cltscope
