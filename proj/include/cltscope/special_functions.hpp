#pragma once

namespace cltscope {

// Standard-Normal density phi(z) = exp(-z^2/2)/sqrt(2*pi).
// Throws InvalidInputError for non-finite z.
double std_normal_pdf(double z);

// Standard-Normal CDF Phi(z). Absolute error below 1e-15 over the real line
// (erfc-based; see the notes in the implementation). Throws
// InvalidInputError for non-finite z.
double std_normal_cdf(double z);

// Inverse of std_normal_cdf on (0,1). Wichura's AS241 rational approximation
// polished by one Newton step, so that std_normal_cdf(std_normal_quantile(p))
// round-trips to ~1e-15. Throws InvalidInputError for p outside (0,1).
double std_normal_quantile(double p);

// Probabilists' Hermite polynomial He_j(z), evaluated by the three-term
// recurrence He_{j+1}(z) = z*He_j(z) - j*He_{j-1}(z). Degrees above
// kMaxHermiteDegree raise UnsupportedDegreeError.
inline constexpr int kMaxHermiteDegree = 8;
double hermite_he(int degree, double z);

}  // namespace cltscope
