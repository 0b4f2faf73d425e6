#pragma once

#include "qmflab/complexmp.hpp"
#include "qmflab/precision.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace qmflab {

// Upper incomplete gamma for half-integer parameters 2a = two_a in {1,-1}.
//   Gamma(1/2, x)  = sqrt(pi) * erfc(sqrt(x))
//   Gamma(-1/2, x) = 2 * (x^{-1/2} e^{-x} - Gamma(1/2, x))
// Throws std::domain_error for a = -1/2 at x = 0 (the integral diverges).
Real incomplete_gamma_upper(int two_a, const Real& x, const PrecisionContext& ctx);

// Exact Bernoulli numbers B_n (B_1 = -1/2) and Bernoulli polynomials B_n(x).
// n is capped at 64; the L-series layer never needs more.
Rat bernoulli_number(unsigned n);
Rat bernoulli_poly(unsigned n, const Rat& x);

Int binomial_int(unsigned long n, unsigned long k);

// Smallest N with pi*y*N^2/M > D*ln10 where D = digits + margin: beyond N the
// Gaussian tail of a weight-1/2 or 3/2 theta term is below the target.
long truncation_bound(const Real& y, long M, const PrecisionContext& ctx);

struct QuadResult {
  Cplx value;
  int levels = 0;
  long nodes = 0;
  Real est_error;
};

struct QuadOptions {
  // e^{-rate_infinity * y} controls the tail, e^{-rate_zero / y} the origin.
  // rate_zero <= 0 means the integrand is merely bounded near 0.
  Real rate_infinity = Real(1);
  Real rate_zero = Real(0);
  int max_level = 12;
  int min_level = 2;
};

// Deterministic exp-sinh quadrature of integrand(y) over y in (0, inf).
// Doubles the node density until two successive refinements agree to
// ctx.quad_target() in absolute value; throws std::runtime_error carrying the
// last two estimates if max_level is exhausted.  Node ordering and the serial
// summation order are fixed, so results are bit-identical run to run.
QuadResult quad_vertical_to_infinity(const std::function<Cplx(const Real&)>& integrand,
                                     const QuadOptions& opt, const PrecisionContext& ctx);

// Shared-node variant: one abscissa set, m integrands evaluated through a
// single callback filling `out`.  Used for cocycle grids where the theta
// factor dominates the cost and is common to every grid point.
std::vector<QuadResult> quad_vertical_multi(
    const std::function<void(const Real&, std::vector<Cplx>&)>& integrand, std::size_t m,
    const QuadOptions& opt, const PrecisionContext& ctx);

// Deterministic tanh-sinh quadrature on a finite segment [0, 1] of a smooth
// integrand; used by the path-independence probe.
QuadResult quad_finite_segment(const std::function<Cplx(const Real&)>& integrand,
                               const PrecisionContext& ctx);

struct PowerSeriesFit {
  std::vector<Cplx> coeffs;  // c_0 .. c_R
  Real residual;             // max abs deviation over the samples
  Real condition;            // rough condition estimate of the normal equations
  bool ill_conditioned = false;
};

// Least-squares fit of samples (t_k, v_k) to sum_{r<=R} c_r t^r.  Requires at
// least 2(R+1) samples on a decreasing geometric grid.  The fit is performed
// at internal order R+5 to absorb the neglected tail; only c_0..c_R are
// reported.
PowerSeriesFit fit_power_series(const std::vector<std::pair<Real, Cplx>>& samples, int R,
                                const PrecisionContext& ctx);

}  // namespace qmflab
