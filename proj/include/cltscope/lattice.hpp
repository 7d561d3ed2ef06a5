#pragma once

#include "cltscope/distribution.hpp"
#include "cltscope/edgeworth.hpp"

namespace cltscope {

// Truncation length for the Fourier form of the zig-zag function.
// 1000 terms give ~1e-3 accuracy away from the jump points.
struct ZigzagConfig {
  long terms = 1000;
};

// Period-1 sawtooth J(z) = (1/pi) * sum_{j=1..terms} sin(2*pi*j*z)/j,
// evaluated after reducing z to [-1/2, 1/2] (J is exactly periodic, and the
// reduction keeps the sine arguments small enough that J vanishes to ~1e-13
// at integer and half-integer points). Production evaluator.
double zigzag_fourier(double z, const ZigzagConfig& cfg = {});

// Closed piecewise form: [z] - z + 1/2 for non-integer z > 0, 0 at integers,
// [z] - z - 1/2 for non-integer z < 0, with [z] the integer part (truncation
// toward zero). Exact, but accumulated roundoff makes it treacherous inside
// the lattice CDF correction, so it serves as a test oracle only.
double zigzag_piecewise(double z);

// Standardize a raw lattice (offset, span) against the given moments.
LatticeSpec standardize_lattice(double offset, double span, const MomentSummary& ms);

// O(n^-1/2) CDF approximation for lattice summands:
//   Phi(z) + skew term + (h*/sqrt(2*pi*n)) * J((z*sqrt(n) - n*a*)/h*) * exp(-z^2/2)
// with a* = lat.std_offset, h* = lat.std_span. The approximation is formal;
// the flag reports values escaping [0,1]. Raises InconsistencyError when
// `lat` does not standardize against `ms` (mismatch above 1e-9).
CdfApprox lattice_cdf(const ApproxQuery& query, const MomentSummary& ms,
                      const LatticeSpec& lat, const ZigzagConfig& cfg = {});

// The bare lattice term of the expansion above, exposed for diagnostics.
double lattice_cdf_term(long long n, double z, const LatticeSpec& lat,
                        const ZigzagConfig& cfg = {});

}  // namespace cltscope
