#include "qmflab/numerics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <mutex>
#include <sstream>

namespace qmflab {

Real incomplete_gamma_upper(int two_a, const Real& x, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (two_a != 1 && two_a != -1) throw std::invalid_argument("a must be 1/2 or -1/2");
  if (x < 0) throw std::domain_error("x must be nonnegative");
  Real xw = widen(x);
  Real g_half = sqrt(mp_pi()) * mp_erfc(sqrt(xw));
  if (two_a == 1) return g_half;
  if (xw == 0) throw std::domain_error("Gamma(-1/2, 0) diverges");
  return 2 * (exp(-xw) / sqrt(xw) - g_half);
}

namespace {

std::mutex bern_mutex;
std::vector<Rat> bern_memo;  // guarded by bern_mutex

}  // namespace

Int binomial_int(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

Rat bernoulli_number(unsigned n) {
  std::lock_guard<std::mutex> lock(bern_mutex);
  if (bern_memo.empty()) bern_memo.push_back(Rat(1));
  while (bern_memo.size() <= n) {
    unsigned m = static_cast<unsigned>(bern_memo.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0 for m >= 1
    Rat s(0);
    for (unsigned k = 0; k < m; ++k) s += Rat(binomial_int(m + 1, k)) * bern_memo[k];
    bern_memo.push_back(-s / Rat(binomial_int(m + 1, m)));
  }
  return bern_memo[n];
}

Rat bernoulli_poly(unsigned n, const Rat& x) {
  if (n > 64) throw std::invalid_argument("bernoulli_poly capped at n = 64");
  // B_n(x) = sum_k C(n,k) B_k x^{n-k}, Horner over descending k
  Rat acc(0);
  for (unsigned k = 0; k <= n; ++k) {
    acc = acc * x + Rat(binomial_int(n, k)) * bernoulli_number(k);
  }
  return acc;
}

long truncation_bound(const Real& y, long M, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (!(y > 0)) throw std::domain_error("truncation_bound requires y > 0");
  Real D(static_cast<long>(ctx.working_digits()));
  Real bound = sqrt(D * mp_ln10() * M / (mp_pi() * widen(y)));
  // saturate instead of overflowing the conversion; callers comparing term
  // counts still see "absurdly many"
  if (bound > Real("1e15")) return 1000000000000000L;
  long n = static_cast<long>(floor(bound));
  return n + 1;
}

namespace {

// Shared exp-sinh driver.  eval(y, out) fills the m integrand values at
// height y; node evaluation per refinement level may run in parallel, the
// accumulation is serial in node order so results are bit-deterministic.
std::vector<QuadResult> exp_sinh_driver(
    const std::function<void(const Real&, std::vector<Cplx>&)>& eval, std::size_t m,
    const QuadOptions& opt, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const unsigned wd = ctx.working_digits();
  Real target = ctx.quad_target();
  Real ln10 = mp_ln10();
  Real digits_scale = Real(static_cast<long>(wd) + 8) * ln10;

  Real t_right = asinh(log(digits_scale / widen(opt.rate_infinity)));
  Real t_left;
  if (opt.rate_zero > 0) {
    t_left = asinh(log(digits_scale / widen(opt.rate_zero)));
  } else {
    t_left = asinh(digits_scale);
  }
  if (!(t_right > 1)) t_right = Real(1);
  if (!(t_left > 1)) t_left = Real(1);
  Real T = (t_right > t_left ? t_right : t_left) + Real(1) / 2;

  const int k0 = 6;
  Real h = T / k0;

  auto g_at = [&](const Real& t, std::vector<Cplx>& out) {
    Real sh = sinh(t);
    Real y = exp(sh);
    // y underflowed to 0 (or is not a regular number): the true summand is
    // double-exponentially small there, so drop the node.
    if (y == 0 || mpfr_number_p(y.backend().data()) == 0) {
      for (auto& v : out) v = Cplx();
      return;
    }
    eval(y, out);
    Real w = y * cosh(t);
    for (auto& v : out) v = v * w;
  };

  std::vector<Cplx> sums(m);
  long nodes = 0;
  OmpExceptionGuard thrown;
  {
    std::vector<std::vector<Cplx>> vals(static_cast<std::size_t>(2 * k0 + 1),
                                        std::vector<Cplx>(m));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
#endif
    for (int k = -k0; k <= k0; ++k) {
      thrown.run([&, k] {
        assert_thread_precision(wd);
        Real t = h * k;
        g_at(t, vals[static_cast<std::size_t>(k + k0)]);
      });
    }
    thrown.rethrow_if_set();
    for (auto& row : vals)
      for (std::size_t j = 0; j < m; ++j) sums[j] += row[j];
    nodes += 2 * k0 + 1;
  }

  std::vector<Cplx> prev(m), cur(m);
  for (std::size_t j = 0; j < m; ++j) cur[j] = sums[j] * h;

  int level = 0;
  Real err(0);
  for (level = 1; level <= opt.max_level; ++level) {
    h = h / 2;
    long half_count = k0 * (1L << (level - 1));  // odd multiples of h in (0, T]
    std::vector<std::vector<Cplx>> vals(static_cast<std::size_t>(2 * half_count),
                                        std::vector<Cplx>(m));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
#endif
    for (long i = 0; i < 2 * half_count; ++i) {
      thrown.run([&, i] {
        assert_thread_precision(wd);
        long k = 2 * (i - half_count) + 1;  // odd k from -2*half_count+1 to 2*half_count-1
        Real t = h * k;
        g_at(t, vals[static_cast<std::size_t>(i)]);
      });
    }
    thrown.rethrow_if_set();
    std::vector<Cplx> new_sum(m);
    for (auto& row : vals)
      for (std::size_t j = 0; j < m; ++j) new_sum[j] += row[j];
    nodes += 2 * half_count;

    prev = cur;
    for (std::size_t j = 0; j < m; ++j) cur[j] = prev[j] / Real(2) + new_sum[j] * h;

    err = Real(0);
    for (std::size_t j = 0; j < m; ++j) {
      Real e = cabs(cur[j] - prev[j]);
      if (e > err) err = e;
    }
    if (level >= opt.min_level && err <= target) break;
  }
  if (level > opt.max_level) {
    std::ostringstream os;
    os << "quadrature did not converge: last two estimates ";
    os << "|I_prev| = " << real_to_string(cabs(prev[0]), 20) << ", |I_last| = "
       << real_to_string(cabs(cur[0]), 20) << ", disagreement = " << real_to_string(err, 20);
    throw std::runtime_error(os.str());
  }

  std::vector<QuadResult> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out[j].value = cur[j];
    out[j].levels = level;
    out[j].nodes = nodes;
    out[j].est_error = cabs(cur[j] - prev[j]);
  }
  return out;
}

}  // namespace

QuadResult quad_vertical_to_infinity(const std::function<Cplx(const Real&)>& integrand,
                                     const QuadOptions& opt, const PrecisionContext& ctx) {
  auto eval = [&](const Real& y, std::vector<Cplx>& out) { out[0] = integrand(y); };
  return exp_sinh_driver(eval, 1, opt, ctx)[0];
}

std::vector<QuadResult> quad_vertical_multi(
    const std::function<void(const Real&, std::vector<Cplx>&)>& integrand, std::size_t m,
    const QuadOptions& opt, const PrecisionContext& ctx) {
  return exp_sinh_driver(integrand, m, opt, ctx);
}

QuadResult quad_finite_segment(const std::function<Cplx(const Real&)>& integrand,
                               const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const unsigned wd = ctx.working_digits();
  Real target = ctx.quad_target();
  // tanh-sinh on [0,1]: u = (1 + tanh(pi/2 sinh t)) / 2; cut off where
  // 1 - u ~ e^{-pi sinh T} drops below the target headroom
  Real half_pi = mp_pi() / 2;
  Real T = asinh(Real(static_cast<long>(wd) + 8) * mp_ln10() / mp_pi());
  const int k0 = 6;
  Real h = T / k0;

  auto g_at = [&](const Real& t) -> Cplx {
    Real s = half_pi * sinh(t);
    Real c = cosh(s);
    Real u = (1 + tanh(s)) / 2;
    if (u <= 0 || u >= 1) return Cplx();
    Real w = half_pi * cosh(t) / (2 * c * c);
    if (w == 0) return Cplx();
    return integrand(u) * w;
  };

  Cplx sum;
  for (int k = -k0; k <= k0; ++k) sum += g_at(h * k);
  Cplx cur = sum * h, prev;
  int level = 1;
  Real err(0);
  long nodes = 2 * k0 + 1;
  for (; level <= 12; ++level) {
    h = h / 2;
    long half_count = k0 * (1L << (level - 1));
    std::vector<Cplx> vals(static_cast<std::size_t>(2 * half_count));
    OmpExceptionGuard thrown;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
#endif
    for (long i = 0; i < 2 * half_count; ++i) {
      thrown.run([&, i] {
        assert_thread_precision(wd);
        long k = 2 * (i - half_count) + 1;
        vals[static_cast<std::size_t>(i)] = g_at(h * k);
      });
    }
    thrown.rethrow_if_set();
    Cplx new_sum;
    for (auto& v : vals) new_sum += v;
    nodes += 2 * half_count;
    prev = cur;
    cur = prev / Real(2) + new_sum * h;
    err = cabs(cur - prev);
    if (level >= 2 && err <= target) break;
  }
  if (level > 12) throw std::runtime_error("finite-segment quadrature did not converge");
  QuadResult r;
  r.value = cur;
  r.levels = level;
  r.nodes = nodes;
  r.est_error = err;
  return r;
}

PowerSeriesFit fit_power_series(const std::vector<std::pair<Real, Cplx>>& samples, int R,
                                const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  const std::size_t K = samples.size();
  if (R < 0) throw std::invalid_argument("order must be nonnegative");
  if (K < 2 * static_cast<std::size_t>(R + 1))
    throw std::invalid_argument("need at least 2(R+1) samples");

  // Fit at a higher internal order so the neglected analytic tail does not
  // bias c_0..c_R; the extra columns stay well conditioned on a geometric
  // grid at working precision.
  int Rint = R + 5;
  if (static_cast<std::size_t>(Rint) + 1 > K / 2) Rint = static_cast<int>(K / 2) - 1;
  if (Rint < R) Rint = R;
  const std::size_t n = static_cast<std::size_t>(Rint) + 1;

  Real t0(0);
  for (const auto& s : samples)
    if (s.first > t0) t0 = widen(s.first);
  if (!(t0 > 0)) {
    // all-zero grid is malformed; surface it as a precondition failure
    throw std::invalid_argument("samples must include positive t");
  }

  // Column r is (t/t0)^r: unit-scale columns, diagonal rescale at the end.
  std::vector<std::vector<Real>> pw(K, std::vector<Real>(n));
  for (std::size_t k = 0; k < K; ++k) {
    Real u = widen(samples[k].first) / t0;
    Real p(1);
    for (std::size_t r = 0; r < n; ++r) {
      pw[k][r] = p;
      p *= u;
    }
  }

  // Normal equations A^T A c = A^T v, A real, v complex.
  std::vector<std::vector<Real>> ata(n, std::vector<Real>(n, Real(0)));
  std::vector<Cplx> atv(n);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) ata[i][j] += pw[k][i] * pw[k][j];
      atv[i] += pw[k][i] * samples[k].second;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) ata[i][j] = ata[j][i];

  // Gaussian elimination with partial pivoting; pivot ratio doubles as a
  // cheap condition estimate.
  Real piv_max(0), piv_min(0);
  bool first_piv = true;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(ata[r][col]) > abs(ata[best][col])) best = r;
    std::swap(ata[col], ata[best]);
    std::swap(atv[col], atv[best]);
    Real p = ata[col][col];
    Real ap = abs(p);
    if (first_piv || ap > piv_max) piv_max = ap;
    if (first_piv || ap < piv_min) piv_min = ap;
    first_piv = false;
    if (ap == 0) {
      PowerSeriesFit bad;
      bad.ill_conditioned = true;
      bad.residual = Real(0);
      bad.condition = Real(0);
      bad.coeffs.assign(static_cast<std::size_t>(R) + 1, Cplx());
      return bad;
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      Real f = ata[r][col] / p;
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) ata[r][j] -= f * ata[col][j];
      atv[r] -= Cplx(f) * atv[col];
    }
  }
  std::vector<Cplx> sol(n);
  for (std::size_t ri = n; ri-- > 0;) {
    Cplx s = atv[ri];
    for (std::size_t j = ri + 1; j < n; ++j) s -= Cplx(ata[ri][j]) * sol[j];
    sol[ri] = s / ata[ri][ri];
  }

  PowerSeriesFit fit;
  fit.condition = piv_min > 0 ? piv_max / piv_min : Real(0);
  Real cond_threshold = pow(Real(10), static_cast<int>(ctx.digits));
  fit.ill_conditioned = !(fit.condition < cond_threshold);

  // Undo column scaling: c_r = sol_r / t0^r.
  fit.coeffs.resize(static_cast<std::size_t>(R) + 1);
  Real sc(1);
  for (std::size_t r = 0; r < n; ++r) {
    if (r <= static_cast<std::size_t>(R)) fit.coeffs[r] = sol[r] / sc;
    sc *= t0;
  }

  Real res(0);
  for (std::size_t k = 0; k < K; ++k) {
    Cplx fitted;
    for (std::size_t r = 0; r < n; ++r) fitted += sol[r] * pw[k][r];
    Real e = cabs(samples[k].second - fitted);
    if (e > res) res = e;
  }
  fit.residual = res;
  return fit;
}

}  // namespace qmflab
