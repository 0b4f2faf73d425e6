#pragma once

#include "qmflab/lvalues.hpp"
#include "qmflab/modgroup.hpp"
#include "qmflab/periodic.hpp"

#include <string>
#include <vector>

namespace qmflab {

enum class EichlerRoute { automatic, series, quadrature };

// Eichler integral of theta_f (f even):
//   tilde_theta_f(z) = int_z^{i inf} theta_f(tau) (tau - conj z)^{-3/2} d tau.
// Interior points use the incomplete-gamma series
//   sqrt(pi/M) e^{-i pi/4} sum_{n>=1} n f(n) Gamma(-1/2, 2 pi n^2 y / M)
//                                      e^{pi i n^2 conj(z)/M};
// rational z in A_M uses vertical-path quadrature.  The route parameter can
// force one evaluation path for cross-checks.
Cplx eichler_tilde(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                   EichlerRoute route = EichlerRoute::automatic);
Cplx eichler_tilde_at_cusp(const PeriodicCoeffs& f, const RationalCusp& alpha,
                           const PrecisionContext& ctx);

// Theta_f(alpha) for even f at alpha in A_M, defined through the Eichler
// integral: Theta_f(alpha) = -(sqrt M/(2 pi)) e^{i pi/4} tilde_theta_f(alpha).
Cplx theta_value_at_cusp(const PeriodicCoeffs& f, const RationalCusp& alpha,
                         const PrecisionContext& ctx);

// Nonholomorphic Eichler integral of Theta_f (f odd) on the lower half plane:
//   hat_Theta_f(tau) = (1/sqrt(i M)) int_{conj tau}^{i inf}
//                       Theta_f(w) (w - tau)^{-1/2} dw
//                    = (1/sqrt pi) sum_{n>=1} f(n) e^{pi i n^2 tau / M}
//                       Gamma(1/2, -2 pi n^2 Im(tau)/M).
// At a rational alpha in B_M the defining integral is evaluated by
// quadrature, independent of the series used on the open half plane.
Cplx hat_Theta(const PeriodicCoeffs& f, const Cplx& tau, const PrecisionContext& ctx,
               EichlerRoute route = EichlerRoute::automatic);
Cplx hat_Theta_at_cusp(const PeriodicCoeffs& f, const RationalCusp& alpha,
                       const PrecisionContext& ctx);

// Cocycle integral r_{gamma,f}(x) along the vertical from s = gamma^{-1}(i inf):
//   weight 3/2: -(sqrt M e^{i pi/4}/(2 pi)) int_s^{i inf} theta_f(tau)
//                 (tau - conj x)^{-3/2} d tau   (f even)
//   weight 1/2: (1/sqrt(i M)) int_s^{i inf} Theta_f(w) (w - x)^{-1/2} dw
//                 (f odd)
// c = 0 returns 0 exactly.  weight2 is 3 or 1.
Cplx cocycle_r(const PeriodicCoeffs& f, int weight2, const MoebiusMap& g, const Cplx& x,
               const PrecisionContext& ctx);
std::vector<Cplx> cocycle_r_multi(const PeriodicCoeffs& f, int weight2, const MoebiusMap& g,
                                  const std::vector<Cplx>& xs, const PrecisionContext& ctx);

struct QmfResidual {
  Cplx value_at_alpha;      // Theta_f(alpha) or theta_f(alpha)
  Cplx value_at_image;      // same object at gamma(alpha) (or gamma tau)
  Cplx slash_factor;        // chibar(gamma) (c alpha + d)^{-k}
  Cplx cocycle;             // r_{gamma,f}
  Cplx residual;            // value - slash * image - cocycle
  Real abs_residual;
};

// Weight 3/2 quantum modularity defect at alpha in A_M (f even):
//   D = Theta_f(alpha) - chibar(gamma)(c alpha + d)^{-3/2} Theta_f(gamma alpha)
//       - r_{gamma,f}(alpha).
// At real alpha with c alpha + d < 0 the slash power takes
// arg(c alpha + d) = -pi sign(c), the boundary value from the half plane the
// cocycle integral converges on; principal branch otherwise.
QmfResidual qmf_residual_32(const PeriodicCoeffs& f, const MoebiusMap& g,
                            const RationalCusp& alpha, const PrecisionContext& ctx);

// Weight 1/2 defect for odd f at tau in the lower half plane or at a cusp in
// B_M (where hat_Theta and the radial limit of theta_f agree):
//   D = hat_Theta_f(tau) - chibar(gamma)(c tau + d)^{-1/2} hat_Theta_f(gamma tau)
//       - r_{gamma,f}(tau).
QmfResidual qmf_residual_12(const PeriodicCoeffs& f, const MoebiusMap& g, const Cplx& tau,
                            const PrecisionContext& ctx);
QmfResidual qmf_residual_12_at_cusp(const PeriodicCoeffs& f, const MoebiusMap& g,
                                    const RationalCusp& alpha, const PrecisionContext& ctx);

struct AgreementReport {
  AsymptoticSeries theta_series;  // exact L-value coefficients, radial side
  AsymptoticSeries hat_series;    // exact L-value coefficients, lower side
  std::vector<Cplx> theta_fit;    // fitted from theta_f samples
  std::vector<Cplx> hat_fit;      // fitted from hat_Theta samples
  Real max_dev;                   // worst |exact - fit| over r <= R, both sides
};

// Verifies that theta_f above and hat_Theta below share the asymptotic
// expansion with the sign pattern L(-2r,C)(-+ t/(2M))^r / r! by fitting both
// against sampled values on a geometric grid t_k = t_start 2^{-k}.  The
// expansion is divergent, so t_start is derived from the first exact term
// the fit cannot model; at cusps where C has a large period this pushes the
// whole ladder toward 0.
AgreementReport infinite_order_agreement(const PeriodicCoeffs& f, const RationalCusp& alpha,
                                         int R, const PrecisionContext& ctx);

}  // namespace qmflab
