#include "qmflab/lvalues.hpp"

#include "qmflab/numerics.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace qmflab {

namespace {

// a^2 p mod N without overflow; all operands stay below N <= ~10^7.
long sq_exp_mod(long long a, long long p, long long N) {
  const long long a2 = ((a % N) * (a % N)) % N;
  long long e = (a2 * (((p % N) + N) % N)) % N;
  return static_cast<long>(e);
}

GaussRat rat_scale(const GaussRat& g, const Rat& s) { return {g.re * s, g.im * s}; }

}  // namespace

const CycloRing& cyclo_ring(long N) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CycloRing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, std::make_unique<CycloRing>(N)).first;
  return *it->second;
}

PeriodicFunction build_C(const PeriodicCoeffs& f, const RationalCusp& alpha) {
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be a finite rational");
  const long long p = alpha.p;
  const long long q = alpha.q;  // reduced, q >= 1
  const long M = f.M;
  PeriodicFunction C;
  C.zeta_order = static_cast<long>(2 * M * q);
  C.P = (p % 2 == 0) ? static_cast<long>(M * q) : static_cast<long>(2 * M * q);
  C.coeff.reserve(static_cast<std::size_t>(C.P));
  C.zexp.reserve(static_cast<std::size_t>(C.P));
  // C(a) = f(a) e^{pi i p a^2/(M q)} = f(a) zeta_N^{p a^2}, N = 2 M q
  for (long a = 1; a <= C.P; ++a) {
    C.coeff.push_back(f.at(a));
    C.zexp.push_back(sq_exp_mod(a, p, C.zeta_order));
  }
  return C;
}

bool mean_is_zero_exact(const PeriodicFunction& C) {
  const CycloRing& ring = cyclo_ring(C.zeta_order);
  std::vector<GaussRat> staged;
  for (long a = 1; a <= C.P; ++a) {
    const auto ia = static_cast<std::size_t>(a - 1);
    if (!C.coeff[ia].is_zero()) ring.stage_monomial(staged, C.coeff[ia], C.zexp[ia]);
  }
  return ring.is_zero(ring.reduce(std::move(staged)));
}

ExactLValue l_at_negative_int(const PeriodicFunction& C, unsigned n, const PrecisionContext& ctx) {
  if (!mean_is_zero_exact(C)) throw DivergentAtCusp("divergent at this cusp");
  ScopedPrecision guard(ctx.working_digits());
  const CycloRing& ring = cyclo_ring(C.zeta_order);
  const Rat P(C.P);
  // L(-n, C) = -P^n/(n+1) sum_{a=1}^{P} C(a) B_{n+1}(a/P)
  std::vector<GaussRat> staged;
  for (long a = 1; a <= C.P; ++a) {
    const auto ia = static_cast<std::size_t>(a - 1);
    if (C.coeff[ia].is_zero()) continue;
    const Rat b = bernoulli_poly(n + 1, Rat(a) / P);
    if (b == 0) continue;
    ring.stage_monomial(staged, rat_scale(C.coeff[ia], b), C.zexp[ia]);
  }
  Rat scale(-1);
  for (unsigned r = 0; r < n; ++r) scale *= P;
  scale /= Rat(n + 1);
  ExactLValue out;
  out.cyclo_order = C.zeta_order;
  out.cyclo_coeffs = ring.mul_scalar(ring.reduce(std::move(staged)), GaussRat(scale));
  out.value = ring.eval_at_root(out.cyclo_coeffs, 1, ctx);
  out.is_gauss_rational = ring.as_gauss_rational(out.cyclo_coeffs, out.rational_value);
  return out;
}

namespace {

AsymptoticSeries expansion_impl(const PeriodicCoeffs& f, const RationalCusp& alpha, int R,
                                int sign, const PrecisionContext& ctx) {
  if (!f.is_odd()) throw std::invalid_argument("asymptotic expansion requires odd f");
  if (R < 0) throw std::invalid_argument("expansion order must be nonnegative");
  ScopedPrecision guard(ctx.working_digits());
  const PeriodicFunction C = build_C(f, alpha);
  AsymptoticSeries out;
  out.base = alpha;
  out.coeffs.reserve(static_cast<std::size_t>(R) + 1);
  // coefficient of t^r is L(-2r, C) (sign/(2M))^r / r!
  Rat scale(1);
  for (int r = 0; r <= R; ++r) {
    const ExactLValue L = l_at_negative_int(C, static_cast<unsigned>(2 * r), ctx);
    out.coeffs.push_back(L.value * rat_to_real(scale));
    scale *= Rat(sign, 2 * f.M);
    scale /= Rat(r + 1);
  }
  out.residual = Real(0);
  return out;
}

}  // namespace

AsymptoticSeries theta_expansion(const PeriodicCoeffs& f, const RationalCusp& alpha, int R,
                                 const PrecisionContext& ctx) {
  return expansion_impl(f, alpha, R, -1, ctx);
}

AsymptoticSeries hat_expansion(const PeriodicCoeffs& f, const RationalCusp& alpha, int R,
                               const PrecisionContext& ctx) {
  return expansion_impl(f, alpha, R, +1, ctx);
}

Cplx radial_value(const PeriodicCoeffs& f, int weight2, const RationalCusp& alpha,
                  const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const PeriodicFunction C = build_C(f, alpha);
  if (weight2 == 3) {
    if (!f.is_even()) throw std::invalid_argument("weight 3/2 radial value requires even f");
    return l_at_negative_int(C, 1, ctx).value;
  }
  if (weight2 == 1) {
    if (!f.is_odd()) throw std::invalid_argument("weight 1/2 radial value requires odd f");
    return l_at_negative_int(C, 0, ctx).value;
  }
  throw std::invalid_argument("weight2 must be 1 or 3");
}

}  // namespace qmflab
