#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <exception>
#include <mutex>
#include <stdexcept>

namespace qmflab {

// All floating-point work uses variable-precision MPFR reals.  Expression
// templates are disabled so arithmetic composes cleanly with the complex
// wrapper in complexmp.hpp.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

// Working-precision contract.  Every public numerical operation receives a
// PrecisionContext; results carry no hidden global state beyond the MPFR
// default precision, which ScopedPrecision pins for the dynamic extent of a
// call.
struct PrecisionContext {
  unsigned digits = 50;       // decimal digits the caller wants to trust
  unsigned trunc_margin = 10; // extra digits of headroom for truncation
  int quad_exp10 = -40;       // quadrature absolute error goal = 10^quad_exp10

  static PrecisionContext make(unsigned digits = 50, unsigned margin = 10) {
    if (digits < 15) throw std::invalid_argument("precision below minimum of 15 digits");
    PrecisionContext c;
    c.digits = digits;
    c.trunc_margin = margin;
    c.quad_exp10 = -static_cast<int>(digits) + 10;
    return c;
  }

  unsigned working_digits() const { return digits + trunc_margin; }

  Real quad_target() const;
};

// RAII guard around the MPFR default construction precision.  The default is
// process-wide state in this Boost version, so guards are applied at public
// entry points and never changed inside parallel regions; worker threads
// re-assert the ambient value instead (see assert_thread_precision).
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits10) : prev_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~ScopedPrecision() { Real::default_precision(prev_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned prev_;
};

// Called as the first statement of every OpenMP region so freshly spawned
// workers construct temporaries at the same precision as the spawning thread.
inline void assert_thread_precision(unsigned digits10) { Real::default_precision(digits10); }

// Keeps the first exception raised inside an OpenMP region so it can be
// rethrown after the join; the GOMP runtime terminates on escaping throws.
class OmpExceptionGuard {
 public:
  template <typename F>
  void run(F&& body) noexcept {
    try {
      body();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!eptr_) eptr_ = std::current_exception();
    }
  }
  void rethrow_if_set() {
    if (eptr_) std::rethrow_exception(eptr_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr eptr_;
};

// Rebuilds x at the current default precision.  Copy construction would keep
// the precision of the source operand, which is exactly what public entry
// points must not depend on.
inline Real widen(const Real& x) {
  Real r(0);
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

inline Real mp_pi() {
  Real r(0);
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real mp_ln10() {
  Real r(10);
  return log(r);
}

inline Real mp_erfc(const Real& x) {
  Real r(0);
  mpfr_erfc(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

// Direct MPFR upper incomplete gamma; used as an independent oracle in tests,
// not by the production erfc-based path.
inline Real mp_gamma_inc(const Real& a, const Real& x) {
  Real r(0);
  mpfr_gamma_inc(r.backend().data(), a.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

inline Real PrecisionContext::quad_target() const {
  Real ten(10);
  return pow(ten, quad_exp10);
}

inline Real rat_to_real(const Rat& q) {
  Real r(0);
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

}  // namespace qmflab
