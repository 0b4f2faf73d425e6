#pragma once

#include "qmflab/complexmp.hpp"
#include "qmflab/precision.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmflab {

// Gaussian rational a + bi with exact rational parts.  Coefficient data and
// everything derived from it by ring operations stays exact.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long v) : re(v), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
};

inline GaussRat operator+(const GaussRat& a, const GaussRat& b) {
  return {a.re + b.re, a.im + b.im};
}
inline GaussRat operator-(const GaussRat& a, const GaussRat& b) {
  return {a.re - b.re, a.im - b.im};
}
inline GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
inline GaussRat operator*(const GaussRat& a, const GaussRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussRat& operator+=(GaussRat& a, const GaussRat& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}
inline bool operator==(const GaussRat& a, const GaussRat& b) {
  return a.re == b.re && a.im == b.im;
}
inline Cplx to_cplx(const GaussRat& g) { return {rat_to_real(g.re), rat_to_real(g.im)}; }

enum class Parity { even, odd, none };

// Periodic coefficient function f with period M, f(0) = 0, supported on the
// residues k with k^2 = k0 mod 2M.  values[r] = f(r) for r in [0, M).
struct PeriodicCoeffs {
  long M = 1;
  long k0 = 1;
  Parity parity = Parity::none;
  std::vector<GaussRat> values;
  std::vector<long> Mf;  // support residues in [1, M/2]
  std::string label;     // builder spelling, used by the CLI for echo

  const GaussRat& at(long n) const {
    long r = n % M;
    if (r < 0) r += M;
    return values[static_cast<std::size_t>(r)];
  }
  bool is_even() const { return parity == Parity::even; }
  bool is_odd() const { return parity == Parity::odd; }
};

// Validates and assembles a PeriodicCoeffs.  Throws std::invalid_argument
// when: M < 2, k0 outside [1, 2M), f(0) != 0, a nonzero value sits outside
// the residue class k^2 = k0 mod 2M, the support M_f is empty, or the stated
// parity does not hold.
PeriodicCoeffs make_periodic(long M, std::vector<GaussRat> values, long k0, Parity parity);

// Named builders.
PeriodicCoeffs char_chi12();
PeriodicCoeffs char_chi_t(int t);                // t >= 1, period 3*2^{t+1}
PeriodicCoeffs char_hikami(int m, int el);       // m >= 1, 0 <= el < m, period 8m+4
PeriodicCoeffs char_false_theta(long j, long M); // odd +-1 pair at +-j mod M
PeriodicCoeffs char_psi();                       // period 2, even, f(1) = 1

// Parses "chi12", "chi_t:2", "hikami:2:1", "false:1:3", "psi".
PeriodicCoeffs build_by_name(const std::string& name);

struct ParityParts {
  std::optional<PeriodicCoeffs> even;
  std::optional<PeriodicCoeffs> odd;
};

// Splits f into even and odd parts; a part that is identically zero or has
// empty support is returned as std::nullopt.
ParityParts decompose(const PeriodicCoeffs& f);

// Primed sum over the folded range: sum_{1 <= k <= M/2} f(k) with the
// k = M/2 term (M even) weighted 1/2.  This is the n = 0 coefficient of the
// dual expansion of theta_f near 0, up to the (Mw)^{-1/2} factor.
GaussRat primed_sum(const PeriodicCoeffs& f);

// c_f = 2 * sum'_{k in M_f} f(k) cos(2 pi k / M), the limit constant of
// theta_f up the vertical at 1 (even f).
Cplx c_f_constant(const PeriodicCoeffs& f, const PrecisionContext& ctx);

// Coefficient function of the L-series attached to f at a rational cusp:
// period P, values C(a) = coeff[a-1] * zeta_N^{zexp[a-1]} for a in [1, P]
// with zeta_N = e^{2 pi i / N}.  Kept in factored form so the L-series layer
// can do exact cyclotomic arithmetic without touching floats.
struct PeriodicFunction {
  long P = 1;
  long zeta_order = 1;
  std::vector<GaussRat> coeff;
  std::vector<long> zexp;
};

// JSON interchange for coefficient data:
// {"M":12,"k0":1,"parity":"even","values":[[nr,dr,ni,di], ...M entries]}
PeriodicCoeffs coeffs_from_json(const std::string& text);
std::string coeffs_to_json(const PeriodicCoeffs& f);

}  // namespace qmflab
