#pragma once

#include "qmflab/complexmp.hpp"
#include "qmflab/periodic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmflab {

struct MoebiusMap {
  long long a = 1, b = 0, c = 0, d = 1;

  long long det() const { return a * d - b * c; }
  MoebiusMap inverse() const { return {d, -b, -c, a}; }
  long long max_entry() const;
  std::string str() const;
};

inline MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
          g.c * h.b + g.d * h.d};
}
inline bool operator==(const MoebiusMap& g, const MoebiusMap& h) {
  return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
}

// Reduced rational p/q; q = 0 encodes i-infinity as 1/0.
struct RationalCusp {
  long long p = 1;
  long long q = 0;

  static RationalCusp infinity() { return {1, 0}; }
  static RationalCusp make(long long p, long long q);  // reduces, normalizes q >= 0
  bool is_infinity() const { return q == 0; }
  Rat value() const { return Rat(p) / q; }
  std::string str() const;
};

inline bool operator==(const RationalCusp& x, const RationalCusp& y) {
  return x.p == y.p && x.q == y.q;
}
inline bool operator<(const RationalCusp& x, const RationalCusp& y) {
  return x.p < y.p || (x.p == y.p && x.q < y.q);
}

RationalCusp parse_cusp(const std::string& text);  // "inf", "0", "-3/7", "1/2"

bool in_gamma1(long N, const MoebiusMap& g);
// Gamma_M = Gamma_1(2M) for M even, with the extra condition b even for M odd.
bool in_gamma_M(long M, const MoebiusMap& g);

// epsilon_d = 1 for d = 1 mod 4, i for d = 3 mod 4 (d odd, any sign).
Cplx epsilon_d(long long d);

// Extended Jacobi/Kronecker symbol (a/d) in the half-integral-weight theta
// convention: d odd, possibly negative; (a/-1) = sign a, (0/±1) = 1.
int jacobi_extended(long long a, long long d);

// chi(gamma) = e^{pi i a b k0 / M} (2cM/d) epsilon_d^{-1} for gamma in
// Gamma_M.  Throws std::invalid_argument if gamma is not in Gamma_M.
Cplx multiplier_chi(long M, long k0, const MoebiusMap& g, const PrecisionContext& ctx);

Cplx apply(const MoebiusMap& g, const Cplx& z);
RationalCusp apply(const MoebiusMap& g, const RationalCusp& x);

struct CuspEquivalence {
  bool equivalent = false;
  std::optional<MoebiusMap> witness;
};

// Decides Gamma_M-equivalence of two cusps and produces a witness gamma with
// gamma(alpha) = beta.  Any gamma mapping alpha to beta factors as
// g_beta (+-T^j) g_alpha^{-1} with g_x in SL2(Z) sending i-infinity to x and
// T the unit translation, and membership in Gamma_M depends on j only through
// affine congruences mod 2M, so scanning j over [-2M, 2M) with both signs is
// exhaustive.  The returned witness minimizes the largest entry over the scan
// window.
CuspEquivalence cusp_equivalent(long M, const RationalCusp& alpha, const RationalCusp& beta);

bool in_B_M(long M, const RationalCusp& alpha);
bool in_A_M(const PeriodicCoeffs& f, const RationalCusp& alpha);

// Test oracle: all elements of Gamma_M with max |entry| <= bound.
std::vector<MoebiusMap> gamma_M_elements_bounded(long M, long bound);

}  // namespace qmflab
