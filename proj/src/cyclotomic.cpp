#include "qmflab/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qmflab {

namespace {

// Exact division of polynomials over Q, remainder must vanish.
std::vector<Rat> poly_divide(std::vector<Rat> num, const std::vector<Rat>& den) {
  std::size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<Rat> q(dn - dd + 1);
  for (std::size_t k = dn + 1; k-- > dd;) {
    // k is the degree of the current leading term
    Rat c = num[k] / den[dd];
    q[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  for (const Rat& r : num)
    if (r != 0) throw std::logic_error("cyclotomic division left a remainder");
  return q;
}

std::vector<long> divisors(long n) {
  std::vector<long> d;
  for (long i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::mutex phi_mutex;
std::map<long, std::vector<Rat>> phi_memo;  // guarded by phi_mutex

// n squarefree; recursion depth is the number of prime factors.
std::vector<Rat> cyclotomic_poly_radical(long n) {
  auto it = phi_memo.find(n);
  if (it != phi_memo.end()) return it->second;
  std::vector<Rat> num(static_cast<std::size_t>(n) + 1);
  num[0] = Rat(-1);
  num[static_cast<std::size_t>(n)] = Rat(1);
  for (long d : divisors(n)) {
    if (d == n) continue;
    num = poly_divide(std::move(num), cyclotomic_poly_radical(d));
  }
  phi_memo[n] = num;
  return num;
}

}  // namespace

std::vector<Rat> cyclotomic_poly(long N) {
  if (N < 1) throw std::invalid_argument("order must be positive");
  long rad = 1, n = N;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      rad *= p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) rad *= n;
  std::vector<Rat> base;
  {
    std::lock_guard<std::mutex> lock(phi_mutex);
    base = cyclotomic_poly_radical(rad);
  }
  long inflate = N / rad;
  if (inflate == 1) return base;
  // Phi_N(x) = Phi_rad(x^{N/rad})
  std::vector<Rat> out(static_cast<std::size_t>(inflate) * (base.size() - 1) + 1);
  for (std::size_t i = 0; i < base.size(); ++i)
    out[i * static_cast<std::size_t>(inflate)] = base[i];
  return out;
}

CycloRing::CycloRing(long N) : N_(N), phi_(cyclotomic_poly(N)) {
  deg_ = static_cast<long>(phi_.size()) - 1;
  // Sparse view of the monic reduction relation x^deg = -sum_i phi_i x^i.
  // The conductors met by the L-value path are 2^a 3^b, whose inflated
  // cyclotomic polynomials are trinomials, so folding is two updates per
  // overflowing power.
  for (long i = 0; i < deg_; ++i)
    if (phi_[static_cast<std::size_t>(i)] != 0)
      sparse_.emplace_back(i, -phi_[static_cast<std::size_t>(i)]);
}

CycloRing::Elem CycloRing::from_scalar(const GaussRat& c) const {
  Elem e = zero();
  e[0] = c;
  return e;
}

void CycloRing::stage_monomial(std::vector<GaussRat>& staged, const GaussRat& c,
                               long long e) const {
  if (staged.size() < static_cast<std::size_t>(N_)) staged.resize(static_cast<std::size_t>(N_));
  long long r = e % N_;
  if (r < 0) r += N_;
  staged[static_cast<std::size_t>(r)] += c;
}

CycloRing::Elem CycloRing::reduce(std::vector<GaussRat> poly) const {
  if (poly.size() < static_cast<std::size_t>(deg_))
    poly.resize(static_cast<std::size_t>(deg_));
  for (std::size_t e = poly.size(); e-- > static_cast<std::size_t>(deg_);) {
    if (poly[e].is_zero()) continue;
    GaussRat c = poly[e];
    poly[e] = GaussRat();
    for (const auto& [i, m] : sparse_) {
      GaussRat t{c.re * m, c.im * m};
      poly[e - static_cast<std::size_t>(deg_) + static_cast<std::size_t>(i)] += t;
    }
  }
  poly.resize(static_cast<std::size_t>(deg_));
  return poly;
}

CycloRing::Elem CycloRing::zeta_pow(long long e) const {
  std::vector<GaussRat> staged(static_cast<std::size_t>(N_));
  stage_monomial(staged, GaussRat(1), e);
  return reduce(std::move(staged));
}

void CycloRing::add_inplace(Elem& a, const Elem& b) const {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

CycloRing::Elem CycloRing::mul(const Elem& a, const Elem& b) const {
  std::vector<GaussRat> conv(static_cast<std::size_t>(2 * deg_ - 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      conv[i + j] += a[i] * b[j];
    }
  }
  return reduce(std::move(conv));
}

CycloRing::Elem CycloRing::mul_scalar(const Elem& a, const GaussRat& c) const {
  Elem out = a;
  for (auto& v : out) v = v * c;
  return out;
}

bool CycloRing::is_zero(const Elem& a) const {
  for (const auto& v : a)
    if (!v.is_zero()) return false;
  return true;
}

bool CycloRing::equal(const Elem& a, const Elem& b) const {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

Cplx CycloRing::eval_at_root(const Elem& a, long long p, const PrecisionContext& ctx) const {
  ScopedPrecision guard(ctx.working_digits());
  Real two_pi = 2 * mp_pi();
  Cplx step = cis(two_pi * Real(static_cast<long>(((p % N_) + N_) % N_)) / Real(N_));
  Cplx w(Real(1));  // zeta^{p i}, advanced incrementally
  Cplx s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) s += to_cplx(a[i]) * w;
    w *= step;
  }
  return s;
}

// Detection is representation-level: the power basis over Q(i) is free, so a
// constant coordinate vector is exactly a Gaussian rational.  When 4 | N the
// ring is not a domain and a non-constant element can still evaluate to a
// rational at the chosen root; such values fall back to decimal rendering.
bool CycloRing::as_gauss_rational(const Elem& a, GaussRat& out) const {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!a[i].is_zero()) return false;
  out = a[0];
  return true;
}

}  // namespace qmflab
