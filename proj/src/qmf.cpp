#include "qmflab/qmf.hpp"

#include "qmflab/numerics.hpp"
#include "qmflab/theta.hpp"

#include <stdexcept>
#include <utility>

namespace qmflab {

namespace {

void require_parity(const PeriodicCoeffs& f, bool even, const char* what) {
  if (even ? !f.is_even() : !f.is_odd()) throw std::invalid_argument(what);
}

// The residuals and cocycles are statements about Gamma_M; outside the group
// the multiplier is meaningless and the image cusp can lose its decay
// certificate, so reject early instead of failing deep in the quadrature.
void require_member(const PeriodicCoeffs& f, const MoebiusMap& g) {
  if (!in_gamma_M(f.M, g))
    throw std::invalid_argument("gamma is not in Gamma_M for the period of f");
}

// Exponential decay rate of the theta integrand along s + it as t -> 0+.
// Through a lift mu(i inf) = s the series decays like e^{-pi k1^2/(M c^2 t)};
// near a translate of zero the dual expansion decays like e^{-pi/(M d^2 t)}.
// Underestimating the rate only widens the quadrature window.
Real rate_toward_cusp(const PeriodicCoeffs& f, const RationalCusp& s) {
  const long k1 = f.Mf.front();
  const CuspEquivalence lift = cusp_equivalent(f.M, RationalCusp::infinity(), s);
  if (lift.equivalent) {
    const Real c2 = Real(lift.witness->c) * Real(lift.witness->c);
    return mp_pi() * Real(k1) * Real(k1) / (Real(f.M) * c2);
  }
  const CuspEquivalence znu = cusp_equivalent(f.M, RationalCusp::make(0, 1), s);
  if (znu.equivalent) {
    const Real d2 = Real(znu.witness->d) * Real(znu.witness->d);
    return mp_pi() / (Real(f.M) * d2);
  }
  throw std::domain_error(
      "cusp " + s.str() +
      " has no decay certificate: it is not Gamma_M-equivalent to i-infinity or 0");
}

Real rate_at_infinity(const PeriodicCoeffs& f) {
  const long k1 = f.Mf.front();
  return mp_pi() * Real(k1) * Real(k1) / Real(f.M);
}

// Incomplete-gamma series for tilde_theta_f on the open upper half plane.
Cplx eichler_series(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx) {
  const long M = f.M;
  const Real y = z.im;
  const long N = truncation_bound(y, M, ctx);
  const Cplx wbar = Cplx(Real(0), mp_pi()) * conj(z) / Real(M);  // e^{pi i n^2 zbar / M}
  const Real xscale = 2 * mp_pi() * y / Real(M);
  Cplx acc;
  for (long k : f.Mf) {
    for (long sgn = 0; sgn < 2; ++sgn) {
      const long r = sgn == 0 ? k : f.M - k;
      if (sgn == 1 && (r == k || r == f.M)) continue;
      const GaussRat& c = f.at(r);
      if (c.is_zero()) continue;
      const Cplx cv = to_cplx(c);
      for (long n = r; n <= N; n += M) {
        const Real g = incomplete_gamma_upper(-1, xscale * Real(n) * Real(n), ctx);
        acc += cv * Real(n) * g * cexp(wbar * (Real(n) * Real(n)));
      }
    }
  }
  return sqrt(mp_pi() / Real(M)) * cis(-mp_pi() / 4) * acc;
}

// Incomplete-gamma series for hat_Theta_f on the open lower half plane.
Cplx hat_series(const PeriodicCoeffs& f, const Cplx& tau, const PrecisionContext& ctx) {
  const long M = f.M;
  const Real y = -tau.im;  // > 0
  const Cplx w = Cplx(Real(0), mp_pi()) * tau / Real(M);
  const Real xscale = 2 * mp_pi() * y / Real(M);
  // |e^{pi i n^2 tau/M} Gamma(1/2, 2 pi n^2 y/M)| ~ e^{-pi n^2 y/M}
  const long N = truncation_bound(y, M, ctx);
  Cplx acc;
  for (long k : f.Mf) {
    for (long sgn = 0; sgn < 2; ++sgn) {
      const long r = sgn == 0 ? k : f.M - k;
      if (sgn == 1 && (r == k || r == f.M)) continue;
      const GaussRat& c = f.at(r);
      if (c.is_zero()) continue;
      const Cplx cv = to_cplx(c);
      for (long n = r; n <= N; n += M) {
        const Real g = incomplete_gamma_upper(1, xscale * Real(n) * Real(n), ctx);
        acc += cv * g * cexp(w * (Real(n) * Real(n)));
      }
    }
  }
  return acc / sqrt(mp_pi());
}

}  // namespace

Cplx eichler_tilde(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                   EichlerRoute route) {
  require_parity(f, true, "eichler integral of theta_f requires even f");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  if (!(zz.im > 0)) throw std::domain_error("interior evaluation requires Im z > 0");
  if (route == EichlerRoute::automatic || route == EichlerRoute::series)
    return eichler_series(f, zz, ctx);
  // quadrature route: tau = z + it, tau - conj z = i(2y + t)
  QuadOptions opt;
  opt.rate_infinity = rate_at_infinity(f);
  opt.rate_zero = Real(0);
  const Real two_y = 2 * zz.im;
  auto integrand = [&](const Real& t) -> Cplx {
    const Cplx th = theta_f(f, Cplx(zz.re, zz.im + t), ctx);
    return th * cpow(Cplx(Real(0), two_y + t), Real(-3) / 2);
  };
  const QuadResult q = quad_vertical_to_infinity(integrand, opt, ctx);
  return Cplx(Real(0), Real(1)) * q.value;
}

Cplx eichler_tilde_at_cusp(const PeriodicCoeffs& f, const RationalCusp& alpha,
                           const PrecisionContext& ctx) {
  require_parity(f, true, "eichler integral of theta_f requires even f");
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  ScopedPrecision guard(ctx.working_digits());
  QuadOptions opt;
  opt.rate_infinity = rate_at_infinity(f);
  opt.rate_zero = rate_toward_cusp(f, alpha);
  const Real a = rat_to_real(alpha.value());
  auto integrand = [&](const Real& t) -> Cplx {
    const Cplx th = theta_f(f, Cplx(a, t), ctx);
    return th * cpow(Cplx(Real(0), t), Real(-3) / 2);
  };
  const QuadResult q = quad_vertical_to_infinity(integrand, opt, ctx);
  return Cplx(Real(0), Real(1)) * q.value;
}

Cplx theta_value_at_cusp(const PeriodicCoeffs& f, const RationalCusp& alpha,
                         const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const Cplx tilde = eichler_tilde_at_cusp(f, alpha, ctx);
  return Real(-1) * sqrt(Real(f.M)) / (2 * mp_pi()) * cis(mp_pi() / 4) * tilde;
}

Cplx hat_Theta(const PeriodicCoeffs& f, const Cplx& tau, const PrecisionContext& ctx,
               EichlerRoute route) {
  require_parity(f, false, "hat_Theta requires odd f");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx tt{widen(tau.re), widen(tau.im)};
  if (!(tt.im < 0)) throw std::domain_error("hat_Theta is defined on the lower half plane");
  if (route == EichlerRoute::automatic || route == EichlerRoute::series)
    return hat_series(f, tt, ctx);
  // quadrature route from conj(tau): w = conj(tau) + it, w - tau = i(2|y| + t)
  QuadOptions opt;
  opt.rate_infinity = rate_at_infinity(f);
  opt.rate_zero = Real(0);
  const Real two_y = -2 * tt.im;
  auto integrand = [&](const Real& t) -> Cplx {
    const Cplx th = Theta_f(f, Cplx(tt.re, -tt.im + t), ctx);
    return th * cpow(Cplx(Real(0), two_y + t), Real(-1) / 2);
  };
  const QuadResult q = quad_vertical_to_infinity(integrand, opt, ctx);
  // 1/sqrt(iM) = e^{-i pi/4}/sqrt(M); d tau = i dt
  return cis(-mp_pi() / 4) / sqrt(Real(f.M)) * (Cplx(Real(0), Real(1)) * q.value);
}

Cplx hat_Theta_at_cusp(const PeriodicCoeffs& f, const RationalCusp& alpha,
                       const PrecisionContext& ctx) {
  require_parity(f, false, "hat_Theta requires odd f");
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  ScopedPrecision guard(ctx.working_digits());
  QuadOptions opt;
  opt.rate_infinity = rate_at_infinity(f);
  opt.rate_zero = rate_toward_cusp(f, alpha);
  const Real a = rat_to_real(alpha.value());
  auto integrand = [&](const Real& t) -> Cplx {
    const Cplx th = Theta_f(f, Cplx(a, t), ctx);
    return th * cpow(Cplx(Real(0), t), Real(-1) / 2);
  };
  const QuadResult q = quad_vertical_to_infinity(integrand, opt, ctx);
  return cis(-mp_pi() / 4) / sqrt(Real(f.M)) * (Cplx(Real(0), Real(1)) * q.value);
}

std::vector<Cplx> cocycle_r_multi(const PeriodicCoeffs& f, int weight2, const MoebiusMap& g,
                                  const std::vector<Cplx>& xs, const PrecisionContext& ctx) {
  if (weight2 != 1 && weight2 != 3) throw std::invalid_argument("weight2 must be 1 or 3");
  require_parity(f, weight2 == 3, "cocycle parity: even f for weight 3/2, odd f for 1/2");
  require_member(f, g);
  ScopedPrecision guard(ctx.working_digits());
  if (g.c == 0) return std::vector<Cplx>(xs.size());  // gamma fixes i-infinity
  const RationalCusp s = RationalCusp::make(-g.d, g.c);
  const Real sr = rat_to_real(s.value());
  std::vector<Cplx> base(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    base[i] = Cplx(sr - xs[i].re, weight2 == 3 ? xs[i].im : -xs[i].im);
    if (base[i].is_zero() && xs[i].im.is_zero())
      throw std::domain_error("cocycle kernel singular: x equals gamma^{-1}(i infinity)");
  }
  QuadOptions opt;
  opt.rate_infinity = rate_at_infinity(f);
  const long k1 = f.Mf.front();
  opt.rate_zero = mp_pi() * Real(k1) * Real(k1) / (Real(f.M) * Real(g.c) * Real(g.c));
  const Real expo = weight2 == 3 ? Real(-3) / 2 : Real(-1) / 2;
  const bool weighted = weight2 == 1;
  auto integrand = [&](const Real& t, std::vector<Cplx>& out) {
    const Cplx th = weighted ? Theta_f(f, Cplx(sr, t), ctx) : theta_f(f, Cplx(sr, t), ctx);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = th * cpow(Cplx(base[i].re, base[i].im + t), expo);
  };
  const std::vector<QuadResult> qs = quad_vertical_multi(integrand, xs.size(), opt, ctx);
  // weight 3/2 kernel uses tau - conj(x); weight 1/2 uses w - x.  d tau = i dt.
  const Cplx pre = weight2 == 3
                       ? Real(-1) * sqrt(Real(f.M)) * cis(mp_pi() / 4) / (2 * mp_pi())
                       : cis(-mp_pi() / 4) / sqrt(Real(f.M));
  std::vector<Cplx> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = pre * (Cplx(Real(0), Real(1)) * qs[i].value);
  return out;
}

Cplx cocycle_r(const PeriodicCoeffs& f, int weight2, const MoebiusMap& g, const Cplx& x,
               const PrecisionContext& ctx) {
  return cocycle_r_multi(f, weight2, g, {x}, ctx).front();
}

namespace {

// (c alpha + d)^{expo} at real alpha.  For negative base the argument is the
// boundary value from the half plane the cocycle converges on:
// arg = -pi sign(c).
Cplx slash_power_real(const MoebiusMap& g, const Rat& alpha, const Real& expo) {
  const Rat w = Rat(g.c) * alpha + Rat(g.d);
  if (w == 0) throw std::domain_error("c alpha + d = 0: alpha maps to i-infinity");
  const Real mag = abs(rat_to_real(w));
  if (w > 0) return pow_with_arg(mag, Real(0), expo);
  const Real arg = g.c > 0 ? -mp_pi() : mp_pi();
  return pow_with_arg(mag, arg, expo);
}

}  // namespace

QmfResidual qmf_residual_32(const PeriodicCoeffs& f, const MoebiusMap& g,
                            const RationalCusp& alpha, const PrecisionContext& ctx) {
  require_parity(f, true, "weight 3/2 quantum residual requires even f");
  require_member(f, g);
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  ScopedPrecision guard(ctx.working_digits());
  const RationalCusp image = apply(g, alpha);
  if (image.is_infinity()) throw std::domain_error("gamma maps alpha to i-infinity");
  QmfResidual out;
  out.value_at_alpha = radial_value(f, 3, alpha, ctx);
  out.value_at_image = radial_value(f, 3, image, ctx);
  const Cplx chi = multiplier_chi(f.M, f.k0, g, ctx);
  out.slash_factor = conj(chi) * slash_power_real(g, alpha.value(), Real(-3) / 2);
  out.cocycle = cocycle_r(f, 3, g, Cplx(rat_to_real(alpha.value()), Real(0)), ctx);
  out.residual = out.value_at_alpha - out.slash_factor * out.value_at_image - out.cocycle;
  out.abs_residual = cabs(out.residual);
  return out;
}

QmfResidual qmf_residual_12(const PeriodicCoeffs& f, const MoebiusMap& g, const Cplx& tau,
                            const PrecisionContext& ctx) {
  require_parity(f, false, "weight 1/2 quantum residual requires odd f");
  require_member(f, g);
  ScopedPrecision guard(ctx.working_digits());
  const Cplx tt{widen(tau.re), widen(tau.im)};
  if (!(tt.im < 0)) throw std::domain_error("tau must lie in the lower half plane");
  QmfResidual out;
  out.value_at_alpha = hat_Theta(f, tt, ctx);
  const Cplx image = apply(g, tt);
  out.value_at_image = hat_Theta(f, image, ctx);
  const Cplx chi = multiplier_chi(f.M, f.k0, g, ctx);
  out.slash_factor = conj(chi) * cpow(Real(g.c) * tt + Real(g.d), Real(-1) / 2);
  out.cocycle = cocycle_r(f, 1, g, tt, ctx);
  out.residual = out.value_at_alpha - out.slash_factor * out.value_at_image - out.cocycle;
  out.abs_residual = cabs(out.residual);
  return out;
}

QmfResidual qmf_residual_12_at_cusp(const PeriodicCoeffs& f, const MoebiusMap& g,
                                    const RationalCusp& alpha, const PrecisionContext& ctx) {
  require_parity(f, false, "weight 1/2 quantum residual requires odd f");
  require_member(f, g);
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  ScopedPrecision guard(ctx.working_digits());
  const RationalCusp image = apply(g, alpha);
  if (image.is_infinity()) throw std::domain_error("gamma maps alpha to i-infinity");
  QmfResidual out;
  out.value_at_alpha = hat_Theta_at_cusp(f, alpha, ctx);
  out.value_at_image = hat_Theta_at_cusp(f, image, ctx);
  const Cplx chi = multiplier_chi(f.M, f.k0, g, ctx);
  out.slash_factor = conj(chi) * slash_power_real(g, alpha.value(), Real(-1) / 2);
  out.cocycle = cocycle_r(f, 1, g, Cplx(rat_to_real(alpha.value()), Real(0)), ctx);
  out.residual = out.value_at_alpha - out.slash_factor * out.value_at_image - out.cocycle;
  out.abs_residual = cabs(out.residual);
  return out;
}

AgreementReport infinite_order_agreement(const PeriodicCoeffs& f, const RationalCusp& alpha,
                                         int R, const PrecisionContext& ctx) {
  require_parity(f, false, "infinite-order agreement requires odd f");
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  ScopedPrecision guard(ctx.working_digits());
  AgreementReport rep;
  // The fitter models orders 0..R+5, so the first term it cannot absorb has
  // order R+6.  Extend the exact expansion that far: the size of that term
  // decides where the sample ladder may start.
  const int Rext = R + 6;
  AsymptoticSeries ext = theta_expansion(f, alpha, Rext, ctx);
  rep.theta_series = ext;
  rep.theta_series.coeffs.resize(static_cast<std::size_t>(R) + 1);
  rep.hat_series = hat_expansion(f, alpha, R, ctx);
  const Real a = rat_to_real(alpha.value());
  const Real two_pi = 2 * mp_pi();
  // Neglecting the order-Rext term biases fitted coefficient r by roughly
  // |c_Rext| t_start^(Rext - r).  The L-values grow factorially, with rate
  // set by the period of C, so at cusps with large period the default start
  // must shrink.  Holding the r = R bias at eps keeps the fit three orders
  // below the suite tolerance; past Rext the tail shrinks geometrically on
  // this window, so the first neglected term is the whole story.
  const Real eps = Real("1e-9");
  Real t_start = Real(1) / 10;
  const Real cm = cabs(ext.coeffs.back());
  if (cm > 0) {
    const Real cut = pow(eps / cm, Real(1) / (Rext - R));
    if (cut < t_start) t_start = cut;
  }
  // The padded fit wants internal order R+5; 2(R+6) is the smallest sample
  // count whose cap K/2 - 1 reaches it, and a shorter ladder keeps the
  // deepest sample as shallow as the bias budget allows.
  const int kSamples = 2 * Rext;
  std::vector<std::pair<Real, Cplx>> up, down;
  up.reserve(kSamples);
  down.reserve(kSamples);
  Real t = t_start;
  for (int k = 0; k < kSamples; ++k) {
    const Real y = t / two_pi;
    up.emplace_back(t, theta_f(f, Cplx(a, y), ctx));
    down.emplace_back(t, hat_Theta(f, Cplx(a, -y), ctx));
    t /= 2;
  }
  const PowerSeriesFit fu = fit_power_series(up, R, ctx);
  const PowerSeriesFit fd = fit_power_series(down, R, ctx);
  rep.theta_fit = fu.coeffs;
  rep.hat_fit = fd.coeffs;
  Real dev(0);
  for (int r = 0; r <= R; ++r) {
    const Real du = cabs(rep.theta_series.coeffs[static_cast<std::size_t>(r)] -
                         rep.theta_fit[static_cast<std::size_t>(r)]);
    const Real dd = cabs(rep.hat_series.coeffs[static_cast<std::size_t>(r)] -
                         rep.hat_fit[static_cast<std::size_t>(r)]);
    if (du > dev) dev = du;
    if (dd > dev) dev = dd;
  }
  rep.max_dev = dev;
  rep.theta_series.residual = fu.residual;
  rep.hat_series.residual = fd.residual;
  return rep;
}

}  // namespace qmflab
