#pragma once

#include "qmflab/precision.hpp"

#include <string>
#include <utility>

namespace qmflab {

// Minimal complex type over Real.  MPC is not available in this toolchain,
// and only a small set of operations is needed, so we carry them here.
struct Cplx {
  Real re, im;

  Cplx() : re(0), im(0) {}
  Cplx(Real r) : re(std::move(r)), im(0) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Cplx(long v) : re(v), im(0) {}
  Cplx(int v) : re(v), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
};

inline Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }

inline Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
inline Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }

inline Cplx operator/(const Cplx& a, const Cplx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }

inline Cplx& operator+=(Cplx& a, const Cplx& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}
inline Cplx& operator-=(Cplx& a, const Cplx& b) {
  a.re -= b.re;
  a.im -= b.im;
  return a;
}
inline Cplx& operator*=(Cplx& a, const Cplx& b) {
  a = a * b;
  return a;
}

inline Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
inline Real cnorm(const Cplx& a) { return a.re * a.re + a.im * a.im; }
inline Real cabs(const Cplx& a) { return sqrt(cnorm(a)); }

// Principal argument in (-pi, pi]; atan2(+0, x<0) = +pi matches.
inline Real carg(const Cplx& a) { return atan2(a.im, a.re); }

inline Cplx cis(const Real& t) { return {cos(t), sin(t)}; }

inline Cplx cexp(const Cplx& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

// Principal logarithm.
inline Cplx clog(const Cplx& z) { return {log(cabs(z)), carg(z)}; }

// w^k on the principal branch, k an arbitrary real exponent.
inline Cplx cpow(const Cplx& w, const Real& k) {
  if (w.is_zero()) return Cplx(Real(0));
  Real lm = log(cabs(w));
  Real th = carg(w);
  Real m = exp(k * lm);
  return {m * cos(k * th), m * sin(k * th)};
}

// w^k where the caller dictates arg(w).  Slash actions on the real line pin
// the argument of a negative real c*alpha+d by the sign of c rather than by
// the principal branch; this helper keeps that rule in one place.
inline Cplx pow_with_arg(const Real& mag, const Real& arg, const Real& k) {
  Real m = exp(k * log(mag));
  return {m * cos(k * arg), m * sin(k * arg)};
}

inline Cplx csqrt(const Cplx& w) { return cpow(w, Real(1) / 2); }

inline std::string real_to_string(const Real& x, unsigned digits) {
  return x.str(digits, std::ios_base::scientific);
}

inline std::string cplx_to_string(const Cplx& z, unsigned digits) {
  std::string s = real_to_string(z.re, digits);
  std::string t = real_to_string(z.im, digits);
  if (!t.empty() && t[0] != '-') s += "+";
  return s + t + "i";
}

}  // namespace qmflab
