#include "qmflab/qknots.hpp"

#include "qmflab/complexmp.hpp"
#include "qmflab/lvalues.hpp"
#include "qmflab/modgroup.hpp"
#include "qmflab/precision.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmflab {

namespace {

// The finite sums in this file are written once against a small arithmetic
// adapter and instantiated twice: FloatQ evaluates at zeta = e^{2 pi i p/N}
// in working precision, ExactQ computes in Q(zeta_N) with cyclotomic
// reduction.  Both reduce integer exponents mod N before use, so q^{-N} = 1
// holds exactly in either backend.
struct FloatQ {
  using V = Cplx;
  long long p;
  long long N;

  V zero() const { return V{Real(0), Real(0)}; }
  V one() const { return V{Real(1), Real(0)}; }
  V qpow(long long e) const {
    long long em = ((e % N) + N) % N;
    long long num = (p * em) % N;
    return cis(2 * mp_pi() * Real(num) / Real(N));
  }
  V mul(const V& a, const V& b) const { return a * b; }
  void add_inplace(V& a, const V& b) const { a += b; }
  V negate(const V& a) const { return -a; }
  bool vanishes(const V& a) const { return a.is_zero(); }
};

struct ExactQ {
  using V = CycloRing::Elem;
  const CycloRing* ring;

  V zero() const { return ring->zero(); }
  V one() const { return ring->from_scalar(GaussRat(1)); }
  V qpow(long long e) const {
    long long N = ring->order();
    return ring->zeta_pow(((e % N) + N) % N);
  }
  V mul(const V& a, const V& b) const { return ring->mul(a, b); }
  void add_inplace(V& a, const V& b) const { ring->add_inplace(a, b); }
  V negate(const V& a) const { return ring->mul_scalar(a, GaussRat(Rat(-1))); }
  bool vanishes(const V& a) const { return ring->is_zero(a); }
};

// table[n] = (q^{1+shift}; q)_n for n = 0..n_max; shift = 0 gives (q)_n.
template <class Q>
std::vector<typename Q::V> poch_table(const Q& q, long long shift, long n_max) {
  std::vector<typename Q::V> tab;
  tab.reserve(static_cast<std::size_t>(n_max) + 1);
  tab.push_back(q.one());
  for (long n = 1; n <= n_max; ++n) {
    auto factor = q.one();
    q.add_inplace(factor, q.negate(q.qpow(shift + n)));
    tab.push_back(q.mul(tab.back(), factor));
  }
  return tab;
}

// gb[n][k] = [n; k]_q for 0 <= k <= n <= n_max.
template <class Q>
std::vector<std::vector<typename Q::V>> gauss_table(const Q& q, long n_max) {
  std::vector<std::vector<typename Q::V>> gb(static_cast<std::size_t>(n_max) + 1);
  gb[0] = {q.one()};
  for (long n = 1; n <= n_max; ++n) {
    auto& row = gb[n];
    row.assign(static_cast<std::size_t>(n) + 1, q.zero());
    row[0] = q.one();
    row[static_cast<std::size_t>(n)] = q.one();
    for (long k = 1; k < n; ++k) {
      row[k] = q.mul(q.qpow(k), gb[n - 1][k]);
      q.add_inplace(row[k], gb[n - 1][k - 1]);
    }
  }
  return gb;
}

template <class Q>
typename Q::V kz_F_core(const Q& q, long N) {
  auto poch = poch_table(q, 0, N - 1);
  auto acc = q.zero();
  for (long n = 0; n < N; ++n) q.add_inplace(acc, poch[n]);
  return acc;
}

// q^{1-N} sum_{n=0}^{N-1} q^{-nN} (q^{1-N}; q)_n, truncated where the
// shifted Pochhammer vanishes.
template <class Q>
typename Q::V jones_t32_core(const Q& q, long N) {
  auto poch = poch_table(q, -static_cast<long long>(N), N - 1);
  auto acc = q.zero();
  for (long n = 0; n < N; ++n) {
    q.add_inplace(acc, q.mul(q.qpow(-static_cast<long long>(n) * N), poch[n]));
  }
  return q.mul(q.qpow(1 - N), acc);
}

// Shared enumerator for F_t and J_N(T(3, 2^t)).  jones_N < 0 means the
// F_t normalization: no q^{-N...} factors and outer prefactor q^{-h'}; a
// nonnegative jones_N turns on the colored-Jones factors q^{-N n m},
// q^{-k N}, q^{-N j} and prefactor q^{2^t - 1 - h' - N}.  The alternating
// sign (-1)^{sum j_l} is part of both normalizations: at a root of unity it
// is the surviving value of (-q^{-N})^{sum j_l}, and dropping it breaks the
// order-0 strange checks at alpha = 0.
//
// The inner tuple sum runs as a DP over x = sum_l j_l l, since the
// congruence 3x = 1 (mod m) and the m-th-root exponent (x - a)/m depend on
// the tuple only through x.
template <class Q>
typename Q::V t32t_core(const Q& q, const TorusKnotParams& P, long N,
                        long long jones_N) {
  const long long m = P.m;
  const bool jones = jones_N >= 0;
  auto gb = gauss_table(q, N);
  auto poch = poch_table(q, jones ? -jones_N : 0, N - 1);

  auto total = q.zero();
  for (long n = 0; n < N; ++n) {
    auto inner_k = q.zero();
    for (long long k = 0; k < m; ++k) {
      std::vector<typename Q::V> dp(1, q.one());
      for (long long l = 1; l < m; ++l) {
        long top = n + (l <= k ? 1 : 0);
        // per-j weight: (-1)^j q^{j(j-1)/2} [top; j] (q^{-N j} for J_N)
        std::vector<typename Q::V> w;
        w.reserve(static_cast<std::size_t>(top) + 1);
        for (long j = 0; j <= top; ++j) {
          long long e = static_cast<long long>(j) * (j - 1) / 2;
          if (jones) e -= jones_N * j;
          auto wj = q.mul(gb[top][j], q.qpow(e));
          w.push_back(j % 2 ? q.negate(wj) : wj);
        }
        std::vector<typename Q::V> next(dp.size() + static_cast<std::size_t>(top * l),
                                        q.zero());
        for (std::size_t x = 0; x < dp.size(); ++x) {
          if (q.vanishes(dp[x])) continue;
          for (long j = 0; j <= top; ++j) {
            auto t = q.mul(dp[x], w[j]);
            q.add_inplace(next[x + static_cast<std::size_t>(l * j)], t);
          }
        }
        dp = std::move(next);
      }
      auto sum_x = q.zero();
      for (std::size_t x = 0; x < dp.size(); ++x) {
        long long xv = static_cast<long long>(x);
        if ((3 * xv) % m != 1 % m) continue;
        if (((xv - P.a) % m + m) % m != 0)
          throw std::logic_error("torus knot enumerator: m-th-root exponent is not an integer");
        q.add_inplace(sum_x, q.mul(dp[x], q.qpow((xv - P.a) / m)));
      }
      if (jones) sum_x = q.mul(sum_x, q.qpow(-k * jones_N));
      q.add_inplace(inner_k, sum_x);
    }
    auto term = q.mul(poch[n], inner_k);
    if (jones) term = q.mul(term, q.qpow(-jones_N * n * m));
    q.add_inplace(total, term);
  }

  long long expo = jones ? 2 * m - 1 - P.hp - jones_N : -P.hp;
  total = q.mul(total, q.qpow(expo));
  return P.hpp % 2 ? q.negate(total) : total;
}

// W-recursion for X_m^{(el)}: summing the index k_i against the binomial
// [k_{i+1} + d_{i,el}; k_i] and the exponent k_i^2 (+ k_i for i > el).  The
// argument of W_i can exceed N-1 by one only at levels i <= el, where the
// single delta has fired below.
template <class Q>
typename Q::V hikami_core(const Q& q, int m, int el, long N) {
  auto amax = [&](int i) -> long { return (i <= el) ? N : N - 1; };
  auto gb = gauss_table(q, N);
  auto poch = poch_table(q, 0, N - 1);

  std::vector<typename Q::V> W(static_cast<std::size_t>(amax(1)) + 1, q.one());
  for (int i = 1; i <= m - 1; ++i) {
    int d = (i == el) ? 1 : 0;
    bool linear = i > el;
    std::vector<typename Q::V> weighted(W.size(), q.zero());
    for (std::size_t s = 0; s < W.size(); ++s) {
      long long sv = static_cast<long long>(s);
      weighted[s] = q.mul(W[s], q.qpow(sv * sv + (linear ? sv : 0)));
    }
    long tmax = amax(i + 1);
    std::vector<typename Q::V> next(static_cast<std::size_t>(tmax) + 1, q.zero());
    for (long t = 0; t <= tmax; ++t) {
      long smax = std::min<long>(t + d, static_cast<long>(W.size()) - 1);
      for (long s = 0; s <= smax; ++s) {
        auto tv = q.mul(gb[t + d][s], weighted[s]);
        q.add_inplace(next[t], tv);
      }
    }
    W = std::move(next);
  }

  auto acc = q.zero();
  for (long t = 0; t < N; ++t) q.add_inplace(acc, q.mul(poch[t], W[t]));
  return acc;
}

Rat frac_mod1(const Rat& r) {
  auto n = numerator(r);
  auto d = denominator(r);
  auto fl = n / d;
  if (n < 0 && fl * d != n) fl -= 1;
  return Rat(n - fl * d, d);
}

Cplx unit_phase(const Rat& turns) {
  Rat t = frac_mod1(turns);
  return cis(2 * mp_pi() * t.convert_to<Real>());
}

void require_order(long long have, long long want) {
  if (have != want) throw std::invalid_argument("root of unity order mismatch");
}

}  // namespace

RootOfUnity RootOfUnity::make(long long p, long long N) {
  if (N < 1) throw std::invalid_argument("root of unity order must be >= 1");
  p %= N;
  if (p < 0) p += N;
  long long g = std::gcd(p, N);  // gcd(0, N) = N reduces p = 0 to 0/1
  return RootOfUnity{p / g, N / g};
}

TorusKnotParams TorusKnotParams::make(int t) {
  if (t < 1 || t > 30) throw std::invalid_argument("torus knot parameter t out of range");
  TorusKnotParams P;
  P.t = t;
  P.m = 1LL << (t - 1);
  const long long pow2t = 1LL << t;
  const bool even = t % 2 == 0;
  const long long hpp_num = even ? pow2t - 1 : pow2t - 2;
  const long long hp_num = even ? pow2t - 4 : pow2t - 5;
  const long long a_num = even ? P.m + 1 : pow2t + 1;
  if (hpp_num % 3 != 0 || hp_num % 3 != 0 || a_num % 3 != 0)
    throw std::logic_error("torus knot parameter table is inconsistent");
  P.hpp = hpp_num / 3;
  P.hp = hp_num / 3;
  P.a = a_num / 3;
  const long long u = 2 * pow2t - 3;
  P.s_t = Rat(u * u, 3 * (pow2t * 4));
  if (t >= 2 && ((3 * P.a) % P.m) != 1)
    throw std::logic_error("3 a(t) is not 1 mod m(t)");
  return P;
}

Cplx pochhammer(const Cplx& q, long n, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (n < 0) throw std::invalid_argument("pochhammer needs n >= 0");
  Cplx acc{Real(1), Real(0)};
  Cplx pw{Real(1), Real(0)};
  for (long i = 1; i <= n; ++i) {
    pw *= q;
    acc *= Cplx{1 - pw.re, -pw.im};
  }
  return acc;
}

Cplx gauss_binomial(long n, long k, const Cplx& q, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (n < 0 || k < 0 || k > n) return Cplx{Real(0), Real(0)};
  std::vector<Cplx> qp(static_cast<std::size_t>(k) + 1, Cplx{Real(1), Real(0)});
  for (long j = 1; j <= k; ++j) qp[j] = qp[j - 1] * q;
  std::vector<Cplx> row(static_cast<std::size_t>(k) + 1, Cplx{Real(0), Real(0)});
  row[0] = Cplx{Real(1), Real(0)};
  for (long i = 1; i <= n; ++i) {
    for (long j = std::min(i, k); j >= 1; --j) row[j] = row[j - 1] + qp[j] * row[j];
  }
  return row[k];
}

CycloRing::Elem pochhammer_exact(const CycloRing& ring, long n) {
  if (n < 0) throw std::invalid_argument("pochhammer needs n >= 0");
  ExactQ q{&ring};
  auto acc = q.one();
  for (long i = 1; i <= n; ++i) {
    auto factor = q.one();
    q.add_inplace(factor, q.negate(q.qpow(i)));
    acc = q.mul(acc, factor);
  }
  return acc;
}

CycloRing::Elem gauss_binomial_exact(const CycloRing& ring, long n, long k) {
  ExactQ q{&ring};
  if (n < 0 || k < 0 || k > n) return q.zero();
  auto gb = gauss_table(q, n);
  return gb[n][k];
}

Cplx kz_F(const RootOfUnity& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  FloatQ q{z.p, z.N};
  return kz_F_core(q, z.N);
}

CycloRing::Elem kz_F_exact(const CycloRing& ring) {
  ExactQ q{&ring};
  return kz_F_core(q, ring.order());
}

Cplx jones_t32(long N, const RootOfUnity& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  require_order(z.N, N);
  FloatQ q{z.p, z.N};
  return jones_t32_core(q, N);
}

CycloRing::Elem jones_t32_exact(const CycloRing& ring, long N) {
  require_order(ring.order(), N);
  ExactQ q{&ring};
  return jones_t32_core(q, N);
}

Cplx kz_Ft(int t, const RootOfUnity& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (t < 2) throw std::invalid_argument("kz_Ft needs t >= 2");
  FloatQ q{z.p, z.N};
  return t32t_core(q, TorusKnotParams::make(t), z.N, -1);
}

CycloRing::Elem kz_Ft_exact(int t, const CycloRing& ring) {
  if (t < 2) throw std::invalid_argument("kz_Ft needs t >= 2");
  ExactQ q{&ring};
  return t32t_core(q, TorusKnotParams::make(t), ring.order(), -1);
}

Cplx jones_t32t(int t, long N, const RootOfUnity& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (t < 2) throw std::invalid_argument("jones_t32t needs t >= 2");
  require_order(z.N, N);
  FloatQ q{z.p, z.N};
  return t32t_core(q, TorusKnotParams::make(t), N, N);
}

CycloRing::Elem jones_t32t_exact(int t, const CycloRing& ring, long N) {
  if (t < 2) throw std::invalid_argument("jones_t32t needs t >= 2");
  require_order(ring.order(), N);
  ExactQ q{&ring};
  return t32t_core(q, TorusKnotParams::make(t), N, N);
}

Cplx hikami_X(int m, int el, const RootOfUnity& z, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (m < 1 || el < 0 || el >= m) throw std::invalid_argument("hikami_X needs m >= 1, 0 <= el < m");
  FloatQ q{z.p, z.N};
  return hikami_core(q, m, el, z.N);
}

CycloRing::Elem hikami_X_exact(int m, int el, const CycloRing& ring) {
  if (m < 1 || el < 0 || el >= m) throw std::invalid_argument("hikami_X needs m >= 1, 0 <= el < m");
  ExactQ q{&ring};
  return hikami_core(q, m, el, ring.order());
}

UnimodalCheck unimodal_closed(const Cplx& q, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  Cplx qq{widen(q.re), widen(q.im)};
  Real absq = cabs(qq);
  if (!(absq < 1)) throw std::domain_error("unimodal identity needs |q| < 1");
  const Real thr = pow(Real(10), -static_cast<int>(ctx.working_digits()) - 5);

  // Both sides share the principal fourth root, so the difference measures
  // the series identity and not a branch convention.
  const Cplx p4 = cpow(qq, Real(1) / 4);

  UnimodalCheck out;
  // -(1/2) sum over odd n of n q^{n^2/4}: power recurrence in p4, exponent
  // steps n^2 -> (n+2)^2 = +4n+4.
  {
    Cplx acc{Real(0), Real(0)};
    Cplx pw = p4;
    const Cplx p42 = p4 * p4;
    const Cplx p44 = p42 * p42;
    const Cplx g = p44 * p44;
    Cplx h = g;  // p4^{4n+4} at n = 1
    for (long n = 1;; n += 2) {
      if (cabs(pw) * n < thr) break;
      acc += Real(n) * pw;
      pw *= h;
      h *= g;
    }
    out.lhs = Real(-1) / 2 * acc;
  }
  // q^{-7/4} V(-1, q^{-2}) = -(1/2) q^{1/4} sum_k (2k+1) q^{k(k+1)}, from the
  // closed form V(-1, q^{-1}) = -(q/2) sum (2k+1) q^{k(k+1)/2} with q -> q^2.
  {
    Cplx acc{Real(0), Real(0)};
    Cplx pw{Real(1), Real(0)};
    const Cplx s2 = qq * qq;
    Cplx h = s2;  // q^{2(k+1)} at k = 0
    for (long k = 0;; ++k) {
      Real mag = cabs(pw) * (2 * k + 1);
      if (mag < thr) break;
      acc += Real(2 * k + 1) * pw;
      pw *= h;
      h *= s2;
    }
    out.rhs = Real(-1) / 2 * (p4 * acc);
  }
  out.diff = out.lhs - out.rhs;
  return out;
}

std::vector<std::pair<long, Rat>> unimodal_lhs_coeffs(int count) {
  std::vector<std::pair<long, Rat>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long n = 1; static_cast<int>(out.size()) < count; ++n) {
    if (n % 2 == 0) continue;  // psi vanishes on even n
    out.emplace_back(n * n, Rat(-n, 2));
  }
  return out;
}

std::vector<std::pair<long, Rat>> unimodal_rhs_coeffs(int count) {
  std::vector<std::pair<long, Rat>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    // 4 * (k(k+1) + 1/4) from the q^{1/4}-shifted closed form
    out.emplace_back(4 * k * (k + 1) + 1, Rat(-(2 * k + 1), 2));
  }
  return out;
}

StrangeCheck strange_check(const std::string& side, const RootOfUnity& alpha,
                           const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  StrangeCheck out;
  out.side = side;

  if (side == "V") {
    // The unimodal identity is exact inside the unit disk and V(-1, .) has
    // no independent finite evaluation at a root of unity, so this side is
    // checked at a fixed interior point; alpha is not consulted.
    UnimodalCheck uc = unimodal_closed(Cplx{exp(Real(-1)), Real(0)}, ctx);
    out.lhs = uc.rhs;
    out.rhs = uc.lhs;
    out.diff = out.lhs - out.rhs;
    return out;
  }

  PeriodicCoeffs f;
  Rat turns;  // phase = e^{2 pi i * turns * alpha}
  Cplx value;
  if (side == "F") {
    f = char_chi12();
    turns = Rat(1, 24);
    value = kz_F(alpha, ctx);
  } else if (side.rfind("Ft:", 0) == 0) {
    int t = std::stoi(side.substr(3));
    TorusKnotParams P = TorusKnotParams::make(t);
    f = char_chi_t(t);
    turns = P.s_t;
    value = kz_Ft(t, alpha, ctx);
  } else if (side.rfind("X:", 0) == 0) {
    std::size_t c2 = side.find(':', 2);
    if (c2 == std::string::npos) throw std::invalid_argument("strange side X needs X:m:el");
    int m = std::stoi(side.substr(2, c2 - 2));
    int el = std::stoi(side.substr(c2 + 1));
    f = char_hikami(m, el);
    long long u = 2LL * m - 2 * el - 1;
    turns = Rat(u * u, 16LL * m + 8);
    value = hikami_X(m, el, alpha, ctx);
  } else {
    throw std::invalid_argument("unknown strange-identity side: " + side);
  }

  out.lhs = unit_phase(turns * Rat(alpha.p, alpha.N)) * value;
  Cplx theta = radial_value(f, 3, RationalCusp::make(alpha.p, alpha.N), ctx);
  out.rhs = Real(-1) / 2 * theta;
  out.diff = out.lhs - out.rhs;
  return out;
}

}  // namespace qmflab
