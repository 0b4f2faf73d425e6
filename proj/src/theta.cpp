#include "qmflab/theta.hpp"

#include "qmflab/numerics.hpp"

#include <mpfr.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qmflab {

namespace {

// Raw MPFR complex scratch for the hot loop.  Boost temporaries allocate on
// every operation; at ~200 bits the allocator dominates the multiply, so the
// kernel below works on preallocated limbs only.
struct RC {
  mpfr_t re, im;
  explicit RC(mpfr_prec_t bits) {
    mpfr_init2(re, bits);
    mpfr_init2(im, bits);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  ~RC() {
    mpfr_clear(re);
    mpfr_clear(im);
  }
  RC(const RC&) = delete;
  RC& operator=(const RC&) = delete;
  void set(const Cplx& z) {
    mpfr_set(re, z.re.backend().data(), MPFR_RNDN);
    mpfr_set(im, z.im.backend().data(), MPFR_RNDN);
  }
  Cplx get() const {
    Cplx z;
    mpfr_set(z.re.backend().data(), re, MPFR_RNDN);
    mpfr_set(z.im.backend().data(), im, MPFR_RNDN);
    return z;
  }
};

// out = x * y; out must not alias x or y.
inline void rc_mul(RC& out, const RC& x, const RC& y) {
  mpfr_fmms(out.re, x.re, y.re, x.im, y.im, MPFR_RNDN);
  mpfr_fmma(out.im, x.re, y.im, x.im, y.re, MPFR_RNDN);
}

struct SupportClass {
  long r;
  Cplx c;
};

std::vector<SupportClass> support_classes(const PeriodicCoeffs& f) {
  std::vector<SupportClass> s;
  for (long r = 1; r < f.M; ++r)
    if (!f.values[static_cast<std::size_t>(r)].is_zero())
      s.push_back({r, to_cplx(f.values[static_cast<std::size_t>(r)])});
  return s;
}

// Partial sum over one residue class, n = r + jM for j in [j0, j1].  The
// power u^{n^2} (u = e^{i pi z / M}) advances by the two-term recurrence
//   u^{(n+M)^2} = u^{n^2} * step,   step' = step * u^{2M^2},
// so each term costs two complex multiplies regardless of height.
Cplx eval_class_block(const SupportClass& sc, long M, const Cplx& w, long j0, long j1,
                      bool weighted, mpfr_prec_t bits) {
  const long n0 = sc.r + j0 * M;
  Cplx p0 = cexp(w * (Real(n0) * Real(n0)));
  Cplx st0 = cexp(w * Real(2 * M * n0 + M * M));
  Cplx st20 = cexp(w * Real(2 * M * M));
  RC p(bits), st(bits), st2(bits), co(bits), acc(bits), t1(bits), t2(bits);
  p.set(p0);
  st.set(st0);
  st2.set(st20);
  co.set(sc.c);
  long n = n0;
  for (long j = j0; j <= j1; ++j, n += M) {
    rc_mul(t1, p, co);
    if (weighted) {
      mpfr_mul_si(t1.re, t1.re, n, MPFR_RNDN);
      mpfr_mul_si(t1.im, t1.im, n, MPFR_RNDN);
    }
    mpfr_add(acc.re, acc.re, t1.re, MPFR_RNDN);
    mpfr_add(acc.im, acc.im, t1.im, MPFR_RNDN);
    if (j < j1) {
      rc_mul(t2, p, st);
      mpfr_swap(t2.re, p.re);
      mpfr_swap(t2.im, p.im);
      rc_mul(t1, st, st2);
      mpfr_swap(t1.re, st.re);
      mpfr_swap(t1.im, st.im);
    }
  }
  return acc.get();
}

// Truncated series sum_{0 < n <= N} f(n) u^{n^2} (times n when weighted),
// blocked over (class, j-range) tasks.  Partials are combined serially in a
// fixed order, so the result is independent of the thread count.
Cplx kernel_blocked(const PeriodicCoeffs& f, const Cplx& z, long N, bool weighted,
                    const PrecisionContext& ctx) {
  const long M = f.M;
  const Cplx w = Cplx(Real(0), mp_pi()) * z / Real(M);
  const auto classes = support_classes(f);
  constexpr long kBlock = 4096;
  struct Task {
    std::size_t cls;
    long j0, j1;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const long jmax = (N - classes[ci].r) / M;
    for (long j0 = 0; j0 <= jmax; j0 += kBlock)
      tasks.push_back({ci, j0, std::min(j0 + kBlock - 1, jmax)});
  }
  std::vector<Cplx> partial(tasks.size());
  const unsigned wd = ctx.working_digits();
  const mpfr_prec_t bits = mpfr_get_prec(w.re.backend().data());
  OmpExceptionGuard thrown;
#pragma omp parallel for schedule(static) if (tasks.size() > 1 && !omp_in_parallel())
  for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(tasks.size()); ++ti) {
    thrown.run([&, ti] {
      assert_thread_precision(wd);
      const Task& t = tasks[static_cast<std::size_t>(ti)];
      partial[static_cast<std::size_t>(ti)] =
          eval_class_block(classes[t.cls], M, w, t.j0, t.j1, weighted, bits);
    });
  }
  thrown.rethrow_if_set();
  Cplx acc;
  for (const Cplx& p : partial) acc += p;
  return acc;
}

void require_upper_half(const Cplx& z) {
  if (!(z.im > 0)) throw std::domain_error("theta series requires Im z > 0");
}

// One-sided class sum S(r) = sum_{n >= 0, n = r mod M} u^{n^2} (times n when
// weighted), in plain Boost arithmetic; building block for the unary sums.
Cplx one_sided_class(const Cplx& z, long r, long M, long N, bool weighted) {
  const Cplx w = Cplx(Real(0), mp_pi()) * z / Real(M);
  Cplx acc;
  if (r > N) return acc;
  Cplx p = cexp(w * (Real(r) * Real(r)));
  Cplx st = cexp(w * Real(2 * M * r + M * M));
  const Cplx st2 = cexp(w * Real(2 * M * M));
  for (long n = r; n <= N; n += M) {
    acc += weighted ? Real(n) * p : p;
    p *= st;
    st *= st2;
  }
  return acc;
}

constexpr double kLowHeightCrossover = 0.02;

struct RoutePlan {
  // 0: direct series.  1: pull back through mu in Gamma_M with mu(i inf)
  // near x, lifting the point to a comfortable height.  2: pull back through
  // mu with mu(0) near x and switch to the dual expansion.
  int kind = 0;
  MoebiusMap mu{1, 0, 0, 1};
};

std::vector<RationalCusp> convergents_of(const Real& x, long long den_cap) {
  std::vector<RationalCusp> out;
  if (abs(x) > Real(1e12)) return out;
  Real t = x;
  long long h0 = 1, k0 = 0, h1 = 0, k1 = 1;  // p_{-1}/q_{-1}, p_0/q_0 seeds
  for (int it = 0; it < 64; ++it) {
    Real fl = floor(t);
    if (abs(fl) > Real(1e15)) break;
    const long long a = fl.convert_to<long long>();
    const long long h2 = a * h0 + h1;
    const long long k2 = a * k0 + k1;
    if (k2 > den_cap || k2 < 0) break;
    out.push_back(RationalCusp::make(h2, k2));
    h1 = h0;
    k1 = k0;
    h0 = h2;
    k0 = k2;
    Real frac = t - fl;
    if (frac < Real(1e-40)) break;
    t = Real(1) / frac;
  }
  return out;
}

RoutePlan plan_route(const PeriodicCoeffs& f, const Cplx& z, bool weighted,
                     const PrecisionContext& ctx) {
  RoutePlan plan;
  if (z.im >= Real(kLowHeightCrossover)) return plan;
  // Only the modular-side series has a transformation law to route through:
  // theta_f for even f, Theta_f for odd f.
  if (weighted ? !f.is_odd() : !f.is_even()) return plan;
  const Real y = z.im;
  double cap_d = 2.0 / std::sqrt(y.convert_to<double>());
  if (!(cap_d < 1e7)) cap_d = 1e7;
  const long long cap = static_cast<long long>(cap_d) + 2;
  const auto convs = convergents_of(z.re, cap);
  Real best_lift = y * 8;  // route only for a real gain
  for (const RationalCusp& s : convs) {
    const CuspEquivalence ce = cusp_equivalent(f.M, RationalCusp::infinity(), s);
    if (!ce.equivalent) continue;
    const Cplx z2 = apply(ce.witness->inverse(), z);
    if (z2.im > best_lift) {
      best_lift = z2.im;
      plan.kind = 1;
      plan.mu = *ce.witness;
    }
  }
  if (plan.kind == 1 && best_lift >= Real(kLowHeightCrossover)) return plan;
  if (!weighted && f.is_even()) {
    // Near a translate of zero the dual expansion converges at rate
    // pi Im z' / (M |z'|^2), which blows up as z' approaches 0.
    const long direct_terms = truncation_bound(y, f.M, ctx);
    Real best_rate(0);
    for (const RationalCusp& s : convs) {
      const CuspEquivalence ce = cusp_equivalent(f.M, RationalCusp::make(0, 1), s);
      if (!ce.equivalent) continue;
      const Cplx z2 = apply(ce.witness->inverse(), z);
      const Real rate = mp_pi() * z2.im / (Real(f.M) * cnorm(z2));
      if (rate > best_rate) {
        const Real dual_terms = sqrt(Real(ctx.working_digits()) * mp_ln10() / rate);
        if (dual_terms * 4 < Real(direct_terms)) {
          best_rate = rate;
          plan.kind = 2;
          plan.mu = *ce.witness;
        }
      }
    }
  }
  return plan;
}

Cplx routed_eval(const PeriodicCoeffs& f, const Cplx& z, bool weighted,
                 const PrecisionContext& ctx) {
  const RoutePlan plan = plan_route(f, z, weighted, ctx);
  if (plan.kind == 0) return theta_f_direct(f, z, ctx, weighted);
  const Cplx z2 = apply(plan.mu.inverse(), z);
  const Cplx chi = multiplier_chi(f.M, f.k0, plan.mu, ctx);
  const Cplx jac = Real(plan.mu.c) * z2 + Real(plan.mu.d);
  const Real half_weight = weighted ? Real(3) / 2 : Real(1) / 2;
  const Cplx inner = plan.kind == 1 ? theta_f_direct(f, z2, ctx, weighted)
                                    : theta_dual_sum(f, z2, ctx, /*include_n0=*/true);
  return chi * cpow(jac, half_weight) * inner;
}

}  // namespace

Cplx theta_f_direct(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                    bool weighted) {
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const long N = truncation_bound(zz.im, f.M, ctx);
  if (N > 2000000000L)
    throw std::domain_error(
        "theta series truncation bound exceeds the supported range at this height");
  return kernel_blocked(f, zz, N, weighted, ctx);
}

Cplx theta_f_direct_serial(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                           bool weighted) {
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const long N = truncation_bound(zz.im, f.M, ctx);
  // Reference implementation: one term per n with no class decomposition.
  const Cplx w = Cplx(Real(0), mp_pi()) * zz / Real(f.M);
  Cplx p(Real(1));           // u^{n^2}
  Cplx s = cexp(w);          // u^{2n+1}
  const Cplx s2 = cexp(w * Real(2));
  Cplx acc;
  for (long n = 0; n <= N; ++n) {
    const GaussRat& c = f.at(n);
    if (!c.is_zero()) acc += to_cplx(c) * (weighted ? Real(n) * p : p);
    p *= s;
    s *= s2;
  }
  return acc;
}

Cplx theta_f(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  return routed_eval(f, zz, /*weighted=*/false, ctx);
}

Cplx Theta_f(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  return routed_eval(f, zz, /*weighted=*/true, ctx);
}

Cplx theta_unary(const Cplx& z, long k, long M, const PrecisionContext& ctx) {
  if (M < 1) throw std::invalid_argument("theta_unary requires M >= 1");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const long N = truncation_bound(zz.im, M, ctx);
  const long kk = ((k % M) + M) % M;
  const long km = (M - kk) % M;
  Cplx s = one_sided_class(zz, kk, M, N, false) + one_sided_class(zz, km, M, N, false);
  // the classes kk and -kk both contain n = 0 exactly when kk = 0; the class
  // kk = M/2 is its own mirror and the doubling is correct as is
  if (kk == 0) s -= Cplx(Real(1));
  return s;
}

Cplx Theta_unary(const Cplx& z, long k, long M, const PrecisionContext& ctx) {
  if (M < 1) throw std::invalid_argument("Theta_unary requires M >= 1");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const long N = truncation_bound(zz.im, M, ctx);
  const long kk = ((k % M) + M) % M;
  const long km = (M - kk) % M;
  // negative n in the class carry weight n < 0, hence the mirrored subtraction
  return one_sided_class(zz, kk, M, N, true) - one_sided_class(zz, km, M, N, true);
}

Cplx product_form(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx) {
  if (!f.is_even()) throw std::invalid_argument("product form requires even f");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const long M = f.M;
  const Cplx w = Cplx(Real(0), mp_pi()) * zz;  // v^m = e^{i pi m z} = q^{m/2}
  const Cplx Q = cexp(w * Real(2 * M));        // q^M
  const Real absQ = cabs(Q);
  const Real eps = pow(Real(10), -static_cast<int>(ctx.working_digits() + 5));
  auto poch = [&](const Cplx& x) {
    // (x; Q)_infty, truncated once |x Q^j| is negligible
    Cplx prod(Real(1));
    Cplx t = x;
    for (int j = 0; j < 100000; ++j) {
      prod *= Cplx(Real(1)) - t;
      t *= Q;
      if (cabs(t) < eps) break;
    }
    return prod;
  };
  Cplx sum;
  for (long k : f.Mf) {
    const long long num = static_cast<long long>(k) * k - f.k0;
    if (num < 0 || num % (2 * M) != 0)
      throw std::logic_error("support invariant violated: k' not a nonnegative integer");
    const long long kp = num / (2 * M);
    Cplx term = to_cplx(f.at(k)) * cexp(w * Real(2 * kp));
    if (2 * k == M) term = term * (Real(1) / 2);  // primed sum halves the midpoint
    term *= poch(-cexp(w * Real(M - 2 * k)));
    term *= poch(-cexp(w * Real(M + 2 * k)));
    sum += term;
  }
  return cexp(w * Real(f.k0) / Real(M)) * poch(Q) * sum;
}

Cplx theta_dual_sum(const PeriodicCoeffs& f, const Cplx& z, const PrecisionContext& ctx,
                    bool include_n0) {
  if (!f.is_even()) throw std::invalid_argument("dual expansion requires even f");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const long M = f.M;
  const Cplx wvar{zz.im, -zz.re};  // w = y - ix = -iz, Re w > 0
  const Cplx invMw = Cplx(Real(1)) / (Real(M) * wvar);
  // Poisson dual: theta_f = (Mw)^{-1/2} sum_nu e^{-pi nu^2/(Mw)} G(nu) with
  // G(nu) = sum_k' f(k) 2 cos(2 pi nu k / M); G depends on nu mod M only.
  std::vector<Cplx> G(static_cast<std::size_t>(M));
  const Real two_pi = 2 * mp_pi();
  for (long t = 0; t < M; ++t) {
    Cplx g;
    for (long k : f.Mf) {
      Cplx c = to_cplx(f.at(k)) * cos(two_pi * Real(t * k) / Real(M));
      if (2 * k == M) c = c * (Real(1) / 2);
      g += c;
    }
    G[static_cast<std::size_t>(t)] = g;
  }
  const Real rate = mp_pi() * invMw.re;  // decay exponent of |e^{-pi nu^2/(Mw)}|
  if (!(rate > 0)) throw std::domain_error("dual expansion needs Re(1/w) > 0");
  const Real D = Real(ctx.working_digits() + ctx.trunc_margin) * mp_ln10();
  const long nu_max = static_cast<long>(floor(sqrt(D / rate)).convert_to<long long>()) + 1;
  const Cplx E = cexp(-mp_pi() * invMw);
  Cplx p = E;        // E^{nu^2}
  Cplx s = E * E * E;  // ratio to the next square
  const Cplx s2 = E * E;
  Cplx acc;
  if (include_n0) acc = to_cplx(primed_sum(f));
  for (long nu = 1; nu <= nu_max; ++nu) {
    acc += Real(2) * p * G[static_cast<std::size_t>(nu % M)];
    p *= s;
    s *= s2;
  }
  return acc / csqrt(Real(M) * wvar);
}

Cplx transform_residual_theta(const PeriodicCoeffs& f, const MoebiusMap& g, const Cplx& z,
                              const PrecisionContext& ctx) {
  if (!f.is_even()) throw std::invalid_argument("weight 1/2 law requires even f");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  // Both sides are plain truncated series; the left side never reuses the
  // transformation being tested.
  const Cplx lhs = theta_f_direct(f, apply(g, zz), ctx, false);
  const Cplx jac = Real(g.c) * zz + Real(g.d);
  const Cplx rhs =
      multiplier_chi(f.M, f.k0, g, ctx) * cpow(jac, Real(1) / 2) * theta_f_direct(f, zz, ctx, false);
  return lhs - rhs;
}

Cplx transform_residual_Theta(const PeriodicCoeffs& f, const MoebiusMap& g, const Cplx& z,
                              const PrecisionContext& ctx) {
  if (!f.is_odd()) throw std::invalid_argument("weight 3/2 law requires odd f");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx zz{widen(z.re), widen(z.im)};
  require_upper_half(zz);
  const Cplx lhs = theta_f_direct(f, apply(g, zz), ctx, true);
  const Cplx jac = Real(g.c) * zz + Real(g.d);
  const Cplx rhs =
      multiplier_chi(f.M, f.k0, g, ctx) * cpow(jac, Real(3) / 2) * theta_f_direct(f, zz, ctx, true);
  return lhs - rhs;
}

DecayCheck decay_at_rational(const PeriodicCoeffs& f, const RationalCusp& alpha, const Real& y,
                             const PrecisionContext& ctx) {
  if (!f.is_even()) throw std::invalid_argument("decay check requires even f");
  if (!primed_sum(f).is_zero())
    throw std::domain_error("theta does not decay: primed sum is nonzero");
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  if (cusp_equivalent(f.M, RationalCusp::infinity(), alpha).equivalent)
    throw std::domain_error("alpha is Gamma_M-equivalent to i-infinity");
  ScopedPrecision guard(ctx.working_digits());
  const Cplx z{rat_to_real(alpha.value()), widen(y)};
  DecayCheck out;
  out.direct = theta_f_direct(f, z, ctx, false);
  out.dual = theta_dual_sum(f, z, ctx, /*include_n0=*/false);
  out.diff = out.direct - out.dual;
  return out;
}

}  // namespace qmflab
