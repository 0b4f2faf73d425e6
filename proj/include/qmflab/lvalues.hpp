#pragma once

#include "qmflab/cyclotomic.hpp"
#include "qmflab/modgroup.hpp"
#include "qmflab/periodic.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace qmflab {

struct DivergentAtCusp : std::domain_error {
  using std::domain_error::domain_error;
};

// C_{f,alpha}(n) = f(n) e^{pi i p n^2 / (M q)} for alpha = p/q: period M q
// when p is even (including the case alpha = 0), 2 M q when p is odd.
PeriodicFunction build_C(const PeriodicCoeffs& f, const RationalCusp& alpha);

// Exact mean over one period, tested in the cyclotomic ring.
bool mean_is_zero_exact(const PeriodicFunction& C);

struct ExactLValue {
  long cyclo_order = 1;                // N with zeta = e^{2 pi i / N}
  std::vector<GaussRat> cyclo_coeffs;  // reduced coordinates in Q(i)[x]/Phi_N
  Cplx value;                          // numerical image at working precision
  bool is_gauss_rational = false;
  GaussRat rational_value;             // meaningful when is_gauss_rational
};

// L(-n, C) = -P^n/(n+1) * sum_{a=1}^{P} C(a) B_{n+1}(a/P), exact.
// Requires mean zero; throws DivergentAtCusp otherwise.
ExactLValue l_at_negative_int(const PeriodicFunction& C, unsigned n,
                              const PrecisionContext& ctx);

struct AsymptoticSeries {
  RationalCusp base;
  std::string scale = "t";  // series variable: theta_f(alpha + it/(2 pi))
  std::vector<Cplx> coeffs;
  Real residual;
};

// theta_f(alpha + i t/(2 pi)) ~ sum_r L(-2r, C) (-t/(2M))^r / r!  (f odd)
AsymptoticSeries theta_expansion(const PeriodicCoeffs& f, const RationalCusp& alpha, int R,
                                 const PrecisionContext& ctx);
// hat_Theta_f(alpha - i t/(2 pi)) ~ sum_r L(-2r, C) (+t/(2M))^r / r!  (f odd)
AsymptoticSeries hat_expansion(const PeriodicCoeffs& f, const RationalCusp& alpha, int R,
                               const PrecisionContext& ctx);

// Radial limit of theta_f (weight2 = 1, f odd: L(0, C)) or Theta_f
// (weight2 = 3, f even: L(-1, C)) at the cusp.  Throws DivergentAtCusp with
// message "divergent at this cusp" when the mean of C is nonzero.
Cplx radial_value(const PeriodicCoeffs& f, int weight2, const RationalCusp& alpha,
                  const PrecisionContext& ctx);

// Shared cache of cyclotomic rings keyed by order; rings are immutable after
// construction so concurrent reads are safe.
const CycloRing& cyclo_ring(long N);

}  // namespace qmflab
