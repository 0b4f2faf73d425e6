#pragma once

#include "qmflab/cyclotomic.hpp"
#include "qmflab/periodic.hpp"

#include <string>
#include <vector>

namespace qmflab {

// zeta = e^{2 pi i p / N}, p/N reduced, in [0, 1).  Fractional powers zeta^r
// for rational r are defined as e^{2 pi i (p/N) r}.
struct RootOfUnity {
  long long p = 0;
  long long N = 1;

  static RootOfUnity make(long long p, long long N);  // reduces mod N
};

struct TorusKnotParams {
  int t;
  long long m;    // 2^{t-1}
  long long hpp;  // h''
  long long hp;   // h'
  long long a;    // inverse of 3 mod m (t >= 2)
  Rat s_t;        // (2^{t+1}-3)^2 / (3 2^{t+2}), kept unreduced-exact

  static TorusKnotParams make(int t);
};

// (q)_n by direct product, and the Gaussian binomial [n; k]_q by the Pascal
// recurrence [n;k] = [n-1;k-1] + q^k [n-1;k].  The recurrence form stays
// defined at roots of unity, where the Pochhammer ratio is 0/0.  k < 0 or
// k > n gives 0.
Cplx pochhammer(const Cplx& q, long n, const PrecisionContext& ctx);
Cplx gauss_binomial(long n, long k, const Cplx& q, const PrecisionContext& ctx);
CycloRing::Elem pochhammer_exact(const CycloRing& ring, long n);
CycloRing::Elem gauss_binomial_exact(const CycloRing& ring, long n, long k);

// Kontsevich-Zagier series F(q) = sum_{n>=0} (q)_n at a root of unity.
Cplx kz_F(const RootOfUnity& z, const PrecisionContext& ctx);
CycloRing::Elem kz_F_exact(const CycloRing& ring);

// Jones polynomial of the (2,3) torus knot at q = e^{2 pi i / N}:
//   J_N(q) = q^{1-N} sum_{n=0}^{N-1} q^{-nN} (q^{1-N}; q)_n.
Cplx jones_t32(long N, const RootOfUnity& z, const PrecisionContext& ctx);
CycloRing::Elem jones_t32_exact(const CycloRing& ring, long N);

// F_t(zeta), the torus-knot generalization, t >= 2, zeta of order N.  The
// m-th-root exponents (-a + sum j_l l)/m are validated to be integers on
// every surviving term; violations raise std::logic_error.
Cplx kz_Ft(int t, const RootOfUnity& z, const PrecisionContext& ctx);
CycloRing::Elem kz_Ft_exact(int t, const CycloRing& ring);

// Jones polynomial of T(3, 2^t) at q = e^{2 pi i / N}.
Cplx jones_t32t(int t, long N, const RootOfUnity& z, const PrecisionContext& ctx);
CycloRing::Elem jones_t32t_exact(int t, const CycloRing& ring, long N);

// Hikami's quantum invariant X_m^{(el)} at a root of unity.
Cplx hikami_X(int m, int el, const RootOfUnity& z, const PrecisionContext& ctx);
CycloRing::Elem hikami_X_exact(int m, int el, const CycloRing& ring);

struct UnimodalCheck {
  Cplx lhs;  // -(1/2) sum_{n>=1} n psi(n) q^{n^2/4}
  Cplx rhs;  // q^{-7/4} V(-1, q^{-2}) in closed form
  Cplx diff;
};

// V(w, q) at w = -1: V(-1, q^{-1}) = -(q/2) sum_{k>=0} (2k+1) q^{k(k+1)/2}.
// unimodal_closed evaluates both sides of the rank-generating identity at a
// point q inside the unit disk.
UnimodalCheck unimodal_closed(const Cplx& q, const PrecisionContext& ctx);

// Exact coefficient maps (exponent of q -> rational coefficient) of both
// sides, for the first `count` nonzero exponents.  Exponents are quarters of
// integers; keys are 4*exponent.
std::vector<std::pair<long, Rat>> unimodal_lhs_coeffs(int count);
std::vector<std::pair<long, Rat>> unimodal_rhs_coeffs(int count);

struct StrangeCheck {
  Cplx lhs;  // phase * finite evaluation at the root of unity
  Cplx rhs;  // -(1/2) radial L-value of the matching theta
  Cplx diff;
  std::string side;
};

// side: "F", "Ft:t", "X:m:el", "V"; alpha = p/N rational.
StrangeCheck strange_check(const std::string& side, const RootOfUnity& alpha,
                           const PrecisionContext& ctx);

}  // namespace qmflab
