#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmflab/lvalues.hpp"
#include "qmflab/qknots.hpp"

#include <stdexcept>

using namespace qmflab;

namespace {

const PrecisionContext& ctx() {
  static PrecisionContext c = PrecisionContext::make(50);
  return c;
}

struct PrecGuard : ScopedPrecision {
  PrecGuard() : ScopedPrecision(ctx().working_digits()) {}
};

}  // namespace

TEST_CASE("root of unity normalization") {
  RootOfUnity a = RootOfUnity::make(5, 10);
  CHECK(a.p == 1);
  CHECK(a.N == 2);
  RootOfUnity b = RootOfUnity::make(0, 7);
  CHECK(b.p == 0);
  CHECK(b.N == 1);
  RootOfUnity c = RootOfUnity::make(-1, 3);
  CHECK(c.p == 2);
  CHECK(c.N == 3);
  CHECK_THROWS_AS(RootOfUnity::make(1, 0), std::invalid_argument);
}

TEST_CASE("torus knot parameter table") {
  TorusKnotParams t1 = TorusKnotParams::make(1);
  CHECK(t1.m == 1);
  CHECK(t1.hpp == 0);
  CHECK(t1.hp == -1);
  CHECK(t1.s_t == Rat(1, 24));

  TorusKnotParams t2 = TorusKnotParams::make(2);
  CHECK(t2.m == 2);
  CHECK(t2.hpp == 1);
  CHECK(t2.hp == 0);
  CHECK(t2.a == 1);
  CHECK(t2.s_t == Rat(25, 48));

  TorusKnotParams t3 = TorusKnotParams::make(3);
  CHECK(t3.m == 4);
  CHECK(t3.hpp == 2);
  CHECK(t3.hp == 1);
  CHECK(t3.a == 3);
  CHECK(t3.s_t == Rat(169, 96));

  CHECK_THROWS_AS(TorusKnotParams::make(0), std::invalid_argument);
}

TEST_CASE("q-Pochhammer and Gaussian binomials") {
  PrecGuard prec;
  // (1/2; 1/2)_3 = (1/2)(3/4)(7/8)
  Cplx q{Real(1) / 2, Real(0)};
  Cplx p3 = pochhammer(q, 3, ctx());
  CHECK(cabs(p3 - Cplx{Real(21) / 64, Real(0)}) < Real("1e-48"));
  CHECK(cabs(pochhammer(q, 0, ctx()) - Cplx{Real(1), Real(0)}) == 0);

  // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4 at q = 0.3
  Cplx q3{Real(3) / 10, Real(0)};
  Cplx gb = gauss_binomial(4, 2, q3, ctx());
  Cplx expect;
  Cplx pw{Real(1), Real(0)};
  for (int coef : {1, 1, 2, 1, 1}) {
    expect += Real(coef) * pw;
    pw = pw * q3;
  }
  CHECK(cabs(gb - expect) < Real("1e-48"));
  // symmetry [n, k] = [n, n-k]
  CHECK(cabs(gauss_binomial(5, 2, q3, ctx()) - gauss_binomial(5, 3, q3, ctx())) < Real("1e-48"));
  // edge cases
  CHECK(cabs(gauss_binomial(4, 0, q3, ctx()) - Cplx{Real(1), Real(0)}) == 0);
  CHECK(cabs(gauss_binomial(3, 5, q3, ctx())) == 0);

  // exact versions over a cyclotomic ring
  const CycloRing& r6 = cyclo_ring(6);
  CycloRing::Elem gbe = gauss_binomial_exact(r6, 4, 2);
  CycloRing::Elem want = r6.from_scalar(GaussRat(1));
  r6.add_inplace(want, r6.zeta_pow(1));
  r6.add_inplace(want, r6.mul_scalar(r6.zeta_pow(2), GaussRat(2)));
  r6.add_inplace(want, r6.zeta_pow(3));
  r6.add_inplace(want, r6.zeta_pow(4));
  CHECK(r6.equal(gbe, want));

  // (zeta_N; zeta_N)_n = 0 once n >= N
  const CycloRing& r4 = cyclo_ring(4);
  CHECK(r4.is_zero(pochhammer_exact(r4, 6)));
  CHECK(!r4.is_zero(pochhammer_exact(r4, 3)));
}

TEST_CASE("Kontsevich-Zagier series at small roots") {
  PrecGuard prec;
  // F(1) = 1, F(-1) = 3
  CHECK(cabs(kz_F(RootOfUnity::make(0, 1), ctx()) - Cplx{Real(1), Real(0)}) < Real("1e-45"));
  CHECK(cabs(kz_F(RootOfUnity::make(1, 2), ctx()) - Cplx{Real(3), Real(0)}) < Real("1e-45"));

  // F(zeta_3) = 5 - zeta_3
  const CycloRing& r3 = cyclo_ring(3);
  CycloRing::Elem f3 = kz_F_exact(r3);
  CycloRing::Elem want = r3.from_scalar(GaussRat(5));
  r3.add_inplace(want, r3.mul_scalar(r3.zeta_pow(1), GaussRat(-1)));
  CHECK(r3.equal(f3, want));
  Cplx zeta3 = cis(2 * mp_pi() / 3);
  CHECK(cabs(kz_F(RootOfUnity::make(1, 3), ctx()) - (Real(5) - zeta3)) < Real("1e-45"));
}

TEST_CASE("colored Jones values") {
  PrecGuard prec;
  // J_2(trefoil) at zeta_2 = -1
  Cplx j2 = jones_t32(2, RootOfUnity::make(1, 2), ctx());
  CHECK(cabs(j2 - Cplx{Real(-3), Real(0)}) < Real("1e-45"));
  // J_1 = 1 (normalized)
  Cplx j1 = jones_t32(1, RootOfUnity::make(0, 1), ctx());
  CHECK(cabs(j1 - Cplx{Real(1), Real(0)}) < Real("1e-45"));
}

TEST_CASE("zeta_N F(zeta_N) equals the colored Jones value") {
  for (long N = 1; N <= 20; ++N) {
    const CycloRing& ring = cyclo_ring(N);
    CycloRing::Elem lhs = ring.mul(ring.zeta_pow(1), kz_F_exact(ring));
    CycloRing::Elem rhs = jones_t32_exact(ring, N);
    CHECK(ring.equal(lhs, rhs));
  }
}

TEST_CASE("generalized identity for T(3, 2^t)") {
  for (int t : {2, 3}) {
    long shift = (1L << t) - 1;
    for (long N = 1; N <= 8; ++N) {
      const CycloRing& ring = cyclo_ring(N);
      CycloRing::Elem lhs = ring.mul(ring.zeta_pow(shift), kz_Ft_exact(t, ring));
      CycloRing::Elem rhs = jones_t32t_exact(t, ring, N);
      CHECK(ring.equal(lhs, rhs));
    }
  }
}

TEST_CASE("Ft exponents stay integral") {
  // the m-th-root exponent (x - a)/m must be an integer whenever the
  // congruence holds; the evaluator throws otherwise
  for (int t : {2, 3, 4}) {
    for (long N = 1; N <= 6; ++N) {
      const CycloRing& ring = cyclo_ring(N);
      CHECK_NOTHROW(kz_Ft_exact(t, ring));
    }
  }
}

TEST_CASE("Ft at 1 equals 1 for t = 2") {
  PrecGuard prec;
  Cplx v = kz_Ft(2, RootOfUnity::make(0, 1), ctx());
  CHECK(cabs(v - Cplx{Real(1), Real(0)}) < Real("1e-45"));
}

TEST_CASE("Hikami series") {
  PrecGuard prec;
  // X_1^{(0)} is the Kontsevich-Zagier series
  for (long N = 1; N <= 12; ++N) {
    const CycloRing& ring = cyclo_ring(N);
    CHECK(ring.equal(hikami_X_exact(1, 0, ring), kz_F_exact(ring)));
  }

  // values at q = 1: X_2^{(0)}(1) = 1, X_2^{(1)}(1) = 2
  CHECK(cabs(hikami_X(2, 0, RootOfUnity::make(0, 1), ctx()) - Cplx{Real(1), Real(0)}) <
        Real("1e-45"));
  CHECK(cabs(hikami_X(2, 1, RootOfUnity::make(0, 1), ctx()) - Cplx{Real(2), Real(0)}) <
        Real("1e-45"));

  // brute-force double sum at N = 3, m = 2: the outer index runs to N-1 and
  // the inner to the gauss-binomial top
  for (int el : {0, 1}) {
    RootOfUnity z = RootOfUnity::make(1, 3);
    Cplx q = cis(2 * mp_pi() / 3);
    Cplx brute;
    for (long k2 = 0; k2 < 3; ++k2) {
      for (long k1 = 0; k1 <= k2 + (el == 1 ? 1 : 0); ++k1) {
        Cplx term = pochhammer(q, k2, ctx());
        long e = k1 * k1 + (el == 0 ? k1 : 0);  // q^{k1^2} and q^{k_1} when l < 1
        for (long i = 0; i < e; ++i) term = term * q;
        term = term * gauss_binomial(k2 + (el == 1 ? 1 : 0), k1, q, ctx());
        brute += term;
      }
    }
    Cplx fast = hikami_X(2, el, z, ctx());
    CHECK(cabs(fast - brute) < Real("1e-40"));
  }

  CHECK_THROWS_AS(hikami_X(2, 2, RootOfUnity::make(1, 3), ctx()), std::invalid_argument);
}

TEST_CASE("unimodal rank generating identity") {
  PrecGuard prec;
  // coefficient lists agree exponent by exponent
  auto lhs = unimodal_lhs_coeffs(20);
  auto rhs = unimodal_rhs_coeffs(20);
  REQUIRE(lhs.size() == 20);
  REQUIRE(rhs.size() == 20);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    CHECK(lhs[i].first == rhs[i].first);
    CHECK(lhs[i].second == rhs[i].second);
  }
  // first entries pinned: exponent n^2 with weight -n/2 over odd n
  CHECK(lhs[0] == std::pair<long, Rat>{1, Rat(-1, 2)});
  CHECK(lhs[1] == std::pair<long, Rat>{9, Rat(-3, 2)});
  CHECK(lhs[2] == std::pair<long, Rat>{25, Rat(-5, 2)});

  // numeric confirmation inside the disk
  UnimodalCheck uc = unimodal_closed(Cplx{exp(Real(-1)), Real(0)}, ctx());
  CHECK(cabs(uc.diff) < Real("1e-30"));

  CHECK_THROWS_AS(unimodal_closed(Cplx{Real(2), Real(0)}, ctx()), std::domain_error);
}

TEST_CASE("strange identity checks") {
  PrecGuard prec;
  // at alpha = 0 both sides are exactly 1 for the trefoil series
  StrangeCheck at0 = strange_check("F", RootOfUnity::make(0, 1), ctx());
  CHECK(cabs(at0.lhs - Cplx{Real(1), Real(0)}) < Real("1e-45"));
  CHECK(cabs(at0.diff) < Real("1e-10"));

  // at alpha = 1/2 the left side is e^{pi i/24} F(-1) = 3 e^{pi i/24}
  StrangeCheck at12 = strange_check("F", RootOfUnity::make(1, 2), ctx());
  Cplx expect = cis(mp_pi() / 24) * Real(3);
  CHECK(cabs(at12.lhs - expect) < Real("1e-40"));
  CHECK(cabs(at12.diff) < Real("1e-10"));

  StrangeCheck ft = strange_check("Ft:2", RootOfUnity::make(1, 3), ctx());
  CHECK(cabs(ft.diff) < Real("1e-10"));

  StrangeCheck hx = strange_check("X:2:1", RootOfUnity::make(1, 3), ctx());
  CHECK(cabs(hx.diff) < Real("1e-10"));

  StrangeCheck v = strange_check("V", RootOfUnity::make(0, 1), ctx());
  CHECK(cabs(v.diff) < Real("1e-30"));

  CHECK_THROWS_AS(strange_check("nope", RootOfUnity::make(0, 1), ctx()), std::invalid_argument);
}
