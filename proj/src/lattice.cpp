#include "cltscope/lattice.hpp"

#include <cmath>

#include "cltscope/errors.hpp"
#include "cltscope/special_functions.hpp"

namespace cltscope {

namespace {

constexpr double kPi = 3.1415926535897932385;
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kSqrt2Pi = 2.5066282746310005024;

}  // namespace

double zigzag_fourier(double z, const ZigzagConfig& cfg) {
  if (!std::isfinite(z)) {
    throw InvalidInputError("zigzag_fourier: argument must be finite");
  }
  if (cfg.terms < 1) {
    throw InvalidInputError("zigzag_fourier: need at least one term");
  }
  // J has period 1; reduce first so huge arguments do not poison the sines.
  const double r = z - std::round(z);
  // Lanczos sigma factors tame the Gibbs wiggle of the bare partial sum:
  // the raw truncation at 1000 terms is still ~5e-3 off at 0.01 from a
  // jump, the smoothed sum is ~2e-6 there. J is piecewise linear, so the
  // smoothing kernel is exact away from the jumps.
  const double m = static_cast<double>(cfg.terms) + 1.0;
  double sum = 0.0;
  for (long j = cfg.terms; j >= 1; --j) {  // ascending magnitudes
    const double t = kPi * static_cast<double>(j) / m;
    const double sigma = std::sin(t) / t;
    sum += sigma * std::sin(kTwoPi * static_cast<double>(j) * r) /
           static_cast<double>(j);
  }
  return sum / kPi;
}

double zigzag_piecewise(double z) {
  if (!std::isfinite(z)) {
    throw InvalidInputError("zigzag_piecewise: argument must be finite");
  }
  const double ip = std::trunc(z);
  if (z == ip) return 0.0;
  return z > 0.0 ? ip - z + 0.5 : ip - z - 0.5;
}

LatticeSpec standardize_lattice(double offset, double span, const MomentSummary& ms) {
  validate(ms);
  if (!(span > 0.0) || !std::isfinite(span) || !std::isfinite(offset)) {
    throw InvalidInputError("standardize_lattice: span must be positive and finite");
  }
  LatticeSpec lat;
  lat.offset = offset;
  lat.span = span;
  lat.std_offset = (offset - ms.mean) / ms.sd;
  lat.std_span = span / ms.sd;
  return lat;
}

double lattice_cdf_term(long long n, double z, const LatticeSpec& lat,
                        const ZigzagConfig& cfg) {
  if (n < 1) {
    throw InvalidInputError("lattice_cdf_term: n must be at least 1");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const double arg = (z * root_n - static_cast<double>(n) * lat.std_offset) /
                     lat.std_span;
  return lat.std_span / (kSqrt2Pi * root_n) * zigzag_fourier(arg, cfg) *
         std::exp(-0.5 * z * z);
}

CdfApprox lattice_cdf(const ApproxQuery& query, const MomentSummary& ms,
                      const LatticeSpec& lat, const ZigzagConfig& cfg) {
  validate(query);
  validate(ms);
  if (!(lat.std_span > 0.0)) {
    throw InvalidInputError("lattice_cdf: standardized span must be positive");
  }
  const double off_err =
      std::fabs(lat.std_offset * ms.sd + ms.mean - lat.offset);
  const double span_err = std::fabs(lat.std_span * ms.sd - lat.span);
  const double scale = std::max(1.0, std::fabs(lat.offset) + lat.span);
  if (off_err > 1e-9 * scale || span_err > 1e-9 * scale) {
    throw InconsistencyError(
        "lattice_cdf: LatticeSpec standardization disagrees with the "
        "MomentSummary");
  }
  const double z = query.point;
  double value = std_normal_cdf(z) + cdf_term_skew(query.n, z, ms.skewness) +
                 lattice_cdf_term(query.n, z, lat, cfg);
  return CdfApprox{value, value < 0.0 || value > 1.0};
}

}  // namespace cltscope
