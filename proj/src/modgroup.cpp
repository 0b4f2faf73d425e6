#include "qmflab/modgroup.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace qmflab {

long long MoebiusMap::max_entry() const {
  long long m = std::llabs(a);
  m = std::max(m, std::llabs(b));
  m = std::max(m, std::llabs(c));
  m = std::max(m, std::llabs(d));
  return m;
}

std::string MoebiusMap::str() const {
  std::ostringstream os;
  os << a << " " << b << " " << c << " " << d;
  return os.str();
}

RationalCusp RationalCusp::make(long long p, long long q) {
  if (q == 0) return infinity();
  if (q < 0) {
    p = -p;
    q = -q;
  }
  long long g = std::gcd(std::llabs(p), q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return {p, q};
}

std::string RationalCusp::str() const {
  if (is_infinity()) return "inf";
  std::ostringstream os;
  os << p;
  if (q != 1) os << "/" << q;
  return os.str();
}

RationalCusp parse_cusp(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return RationalCusp::infinity();
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return RationalCusp::make(std::stoll(text), 1);
    }
    long long p = std::stoll(text.substr(0, slash));
    long long q = std::stoll(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return RationalCusp::make(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed cusp: " + text);
  }
}

bool in_gamma1(long N, const MoebiusMap& g) {
  if (g.det() != 1) return false;
  auto cong = [N](long long x, long long r) { return ((x - r) % N + N) % N == 0; };
  return cong(g.a, 1) && cong(g.d, 1) && cong(g.c, 0);
}

bool in_gamma_M(long M, const MoebiusMap& g) {
  if (!in_gamma1(2 * M, g)) return false;
  if (M % 2 == 1 && ((g.b % 2) + 2) % 2 != 0) return false;
  return true;
}

Cplx epsilon_d(long long d) {
  if (((d % 2) + 2) % 2 == 0) throw std::invalid_argument("epsilon_d requires odd d");
  long long r = ((d % 4) + 4) % 4;
  return r == 1 ? Cplx(Real(1)) : Cplx(Real(0), Real(1));
}

int jacobi_extended(long long a, long long d) {
  if (((d % 2) + 2) % 2 == 0) throw std::invalid_argument("jacobi_extended requires odd d");
  Int ai(a), di(d);
  return mpz_kronecker(ai.backend().data(), di.backend().data());
}

Cplx multiplier_chi(long M, long k0, const MoebiusMap& g, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (!in_gamma_M(M, g)) throw std::invalid_argument("matrix is not in Gamma_M");
  // e^{pi i a b k0 / M}: the exponent only matters mod 2M
  long long e = ((g.a % (2 * M)) * (g.b % (2 * M))) % (2 * M);
  e = (e * (k0 % (2 * M))) % (2 * M);
  e = (e % (2 * M) + 2 * M) % (2 * M);
  Cplx phase = cis(mp_pi() * Real(static_cast<long>(e)) / Real(M));
  int kr = jacobi_extended(2 * g.c * M, g.d);
  Cplx eps = epsilon_d(g.d);
  return phase * Real(kr) * conj(eps);  // epsilon_d is a 4th root of unity on the unit circle
}

Cplx apply(const MoebiusMap& g, const Cplx& z) {
  Cplx num = Cplx(Real(static_cast<long>(g.a))) * z + Cplx(Real(static_cast<long>(g.b)));
  Cplx den = Cplx(Real(static_cast<long>(g.c))) * z + Cplx(Real(static_cast<long>(g.d)));
  return num / den;
}

RationalCusp apply(const MoebiusMap& g, const RationalCusp& x) {
  return RationalCusp::make(g.a * x.p + g.b * x.q, g.c * x.p + g.d * x.q);
}

namespace {

// ext_gcd(p, q) with p u + q v = 1 for coprime inputs.
void ext_gcd(long long p, long long q, long long& u, long long& v) {
  if (q == 0) {
    u = p > 0 ? 1 : -1;
    v = 0;
    return;
  }
  long long u1;
  ext_gcd(q, p % q, v, u1);
  u = u1;
  v -= (p / q) * u1;
}

// Some element of SL2(Z) sending i-infinity to x.
MoebiusMap scaling_matrix(const RationalCusp& x) {
  if (x.is_infinity()) return {};
  long long u, v;
  ext_gcd(x.p, x.q, u, v);  // p u + q v = 1
  return {x.p, -v, x.q, u};
}

}  // namespace

CuspEquivalence cusp_equivalent(long M, const RationalCusp& alpha, const RationalCusp& beta) {
  MoebiusMap ga = scaling_matrix(alpha);
  MoebiusMap gb = scaling_matrix(beta);
  MoebiusMap ga_inv = ga.inverse();

  CuspEquivalence out;
  long long best = 0;
  for (int sign = 1; sign >= -1; sign -= 2) {
    for (long long j = -2 * M; j < 2 * M; ++j) {
      MoebiusMap tj{1, j, 0, 1};
      MoebiusMap cand = gb * tj * ga_inv;
      if (sign < 0) {
        cand.a = -cand.a;
        cand.b = -cand.b;
        cand.c = -cand.c;
        cand.d = -cand.d;
      }
      if (!in_gamma_M(M, cand)) continue;
      long long m = cand.max_entry();
      if (!out.equivalent || m < best) {
        out.equivalent = true;
        out.witness = cand;
        best = m;
      }
    }
  }
  return out;
}

bool in_B_M(long M, const RationalCusp& alpha) {
  return cusp_equivalent(M, alpha, RationalCusp::infinity()).equivalent;
}

bool in_A_M(const PeriodicCoeffs& f, const RationalCusp& alpha) {
  if (in_B_M(f.M, alpha)) return true;
  if (!primed_sum(f).is_zero()) return false;
  return cusp_equivalent(f.M, alpha, RationalCusp::make(0, 1)).equivalent;
}

std::vector<MoebiusMap> gamma_M_elements_bounded(long M, long bound) {
  std::vector<MoebiusMap> out;
  long long N = 2 * M;
  for (long long a = -(bound / N) * N + 1; a <= bound; a += N) {
    if (std::llabs(a) > bound) continue;
    for (long long c = -(bound / N) * N; c <= bound; c += N) {
      if (std::llabs(c) > bound) continue;
      if (c == 0) {
        if (a != 1) continue;
        for (long long b = -bound; b <= bound; ++b) {
          if (M % 2 == 1 && ((b % 2) + 2) % 2 != 0) continue;
          out.push_back({1, b, 0, 1});
        }
        continue;
      }
      for (long long d = -(bound / N) * N + 1; d <= bound; d += N) {
        if (std::llabs(d) > bound) continue;
        long long t = a * d - 1;
        if (t % c != 0) continue;
        long long b = t / c;
        if (std::llabs(b) > bound) continue;
        if (M % 2 == 1 && ((b % 2) + 2) % 2 != 0) continue;
        out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

}  // namespace qmflab
