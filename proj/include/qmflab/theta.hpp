#pragma once

#include "qmflab/modgroup.hpp"
#include "qmflab/periodic.hpp"

#include <vector>

namespace qmflab {

// theta_f(z)  = sum_{n >= 0} f(n) q^{n^2/(2M)},      q = e^{2 pi i z}
// Theta_f(z)  = sum_{n >= 0} n f(n) q^{n^2/(2M)}
//
// Heights below the crossover (y < 0.02) route through a modular pullback or
// the dual Poisson expansion; the direct series alone would need O(1/sqrt y)
// terms.  Either route is applied automatically and is transparent to the
// caller.
Cplx theta_f(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx);
Cplx Theta_f(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx);

// Force the plain truncated series at z, no routing; the low-level kernel and
// the reference implementation for route/parallelism tests.
Cplx theta_f_direct(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                    bool weighted = false);
Cplx theta_f_direct_serial(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                           bool weighted = false);

// Unary building blocks: bilateral sums over a single residue class
//   theta(z; k, M) = sum_{n = k mod M} e^{pi i n^2 z / M}      (n over Z)
//   Theta(z; k, M) = sum_{n = k mod M} n e^{pi i n^2 z / M}
Cplx theta_unary(const Cplx& z, long k, long M, const PrecisionContext& ctx);
Cplx Theta_unary(const Cplx& z, long k, long M, const PrecisionContext& ctx);

// Jacobi-triple-product form of theta_f for even f, via the factorization of
// the support into the classes k, M-k with k' = (k^2 - k0)/(2M) integral.
Cplx product_form(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx);

// theta_f(gamma z) - chi(gamma) (cz+d)^{1/2} theta_f(z); both sides evaluated
// independently.  Weight 3/2 variant for odd f uses Theta_f and (cz+d)^{3/2}.
Cplx transform_residual_theta(const PeriodicCoeffs& f, const MoebiusMap& g, const Cplx& z,
                              const PrecisionContext& ctx);
Cplx transform_residual_Theta(const PeriodicCoeffs& f, const MoebiusMap& g, const Cplx& z,
                              const PrecisionContext& ctx);

struct DecayCheck {
  Cplx direct;  // truncated series at alpha + iy
  Cplx dual;    // bilateral dual sum, n != 0, prefactor (M(y - i alpha))^{-1/2}
  Cplx diff;
};

// Requires f even with primed_sum(f) = 0 and alpha not Gamma_M-equivalent to
// i-infinity.
DecayCheck decay_at_rational(const PeriodicCoeffs& f, const RationalCusp& alpha, const Real& y,
                             const PrecisionContext& ctx);

// Dual (Poisson) expansion of theta_f at x + iy, valid for even f; exact
// identity, rapidly convergent when y is small.  include_n0 keeps the n = 0
// term (primed_sum prefactor).
Cplx theta_dual_sum(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                    bool include_n0 = true);

}  // namespace qmflab
