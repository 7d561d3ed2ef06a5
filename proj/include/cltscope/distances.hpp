#pragma once

#include "cltscope/grid_function.hpp"

namespace cltscope {

// Sup over the (merged) grid of |F - G|. CDF tabulations only.
double ks_distance(const GridFunction& f, const GridFunction& g);

// Trapezoid integral of |F - G| over the merged grid. Raises
// TruncationError when |F - G| > 1e-6 at either end of the overlap, since
// the integral would then be missing mass outside the tabulated window.
double wkr_distance(const GridFunction& f, const GridFunction& g);

struct BhattacharyyaResult {
  double coefficient;  // BC = integral of sqrt(f*g), in [0,1]
  double distance;     // -ln BC
};

// PDF tabulations only.
BhattacharyyaResult bhattacharyya(const GridFunction& f, const GridFunction& g);

// Hellinger metric sqrt(1 - BC), in [0,1].
double hellinger(const GridFunction& f, const GridFunction& g);

struct KlResult {
  double divergence;            // CrEn - DE, >= 0 up to quadrature noise
  double cross_entropy;         // -int f log g
  double differential_entropy;  // -int f log f
};

// KL divergence of g from f on the merged grid. g is clamped below at
// 1e-300; where f > 1e-12 and g is smaller than that floor the divergence
// is +inf analytically, reported as SupportMismatchError.
KlResult kl_divergence(const GridFunction& f, const GridFunction& g);

// Jensen-Shannon metric sqrt((KL(f||m) + KL(g||m))/2), m the equal mixture.
// Bounded by sqrt(ln 2).
double js_metric(const GridFunction& f, const GridFunction& g);

}  // namespace cltscope
