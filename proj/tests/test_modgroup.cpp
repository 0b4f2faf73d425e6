#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmflab/modgroup.hpp"
#include "qmflab/periodic.hpp"

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace qmflab;

namespace {

const PrecisionContext& ctx() {
  static PrecisionContext c = PrecisionContext::make(50);
  return c;
}

struct PrecGuard : ScopedPrecision {
  PrecGuard() : ScopedPrecision(ctx().working_digits()) {}
};

std::vector<RationalCusp> cusp_grid(long max_den) {
  std::set<std::pair<long long, long long>> seen;
  std::vector<RationalCusp> out;
  auto add = [&](RationalCusp c) {
    if (seen.insert({c.p, c.q}).second) out.push_back(c);
  };
  add(RationalCusp::infinity());
  for (long q = 1; q <= max_den; ++q)
    for (long p = -q; p <= q; ++p) add(RationalCusp::make(p, q));
  return out;
}

}  // namespace

TEST_CASE("rational cusp normalization") {
  RationalCusp half = RationalCusp::make(2, 4);
  CHECK(half.p == 1);
  CHECK(half.q == 2);
  RationalCusp neg = RationalCusp::make(1, -2);
  CHECK(neg.p == -1);
  CHECK(neg.q == 2);
  CHECK(RationalCusp::make(5, 0).is_infinity());
  CHECK(RationalCusp::infinity().is_infinity());
  CHECK(!half.is_infinity());

  CHECK(parse_cusp("inf").is_infinity());
  RationalCusp c = parse_cusp("-3/7");
  CHECK(c.p == -3);
  CHECK(c.q == 7);
  CHECK(parse_cusp("0").q == 1);
  CHECK_THROWS_AS(parse_cusp("x/y"), std::invalid_argument);
}

TEST_CASE("moebius action") {
  PrecGuard prec;
  MoebiusMap g{2, 1, 3, 2};
  CHECK(g.det() == 1);
  MoebiusMap gi = g.inverse();
  CHECK(gi.a == 2);
  CHECK(gi.b == -1);
  CHECK(gi.c == -3);
  CHECK(gi.d == 2);

  // (2i+1)/(3i+2) at z = i
  Cplx z{Real(0), Real(1)};
  Cplx w = apply(g, z);
  Cplx expect = (Cplx{Real(1), Real(2)}) / (Cplx{Real(2), Real(3)});
  CHECK(cabs(w - expect) < Real("1e-45"));

  CHECK(apply(g, RationalCusp::infinity()).p == 2);
  CHECK(apply(g, RationalCusp::infinity()).q == 3);
  RationalCusp pole = RationalCusp::make(-2, 3);  // c alpha + d = 0
  CHECK(apply(g, pole).is_infinity());
}

TEST_CASE("group membership") {
  CHECK(in_gamma1(12, MoebiusMap{1, 1, 0, 1}));
  CHECK(in_gamma1(12, MoebiusMap{1, 0, 12, 1}));
  CHECK(!in_gamma1(12, MoebiusMap{1, 0, 6, 1}));
  CHECK(!in_gamma1(12, MoebiusMap{5, 2, 12, 5}));

  // M even: no condition on b
  CHECK(in_gamma_M(6, MoebiusMap{1, 1, 0, 1}));
  CHECK(in_gamma_M(6, MoebiusMap{1, 0, 12, 1}));
  // M odd: b must be even
  CHECK(!in_gamma_M(3, MoebiusMap{1, 1, 0, 1}));
  CHECK(in_gamma_M(3, MoebiusMap{1, 2, 0, 1}));
  CHECK(in_gamma_M(3, MoebiusMap{7, 2, 24, 7}));
  CHECK(in_gamma_M(2, MoebiusMap{1, 0, 4, 1}));
  CHECK(!in_gamma_M(2, MoebiusMap{1, 0, 2, 1}));
}

TEST_CASE("epsilon_d and the extended symbol") {
  PrecGuard prec;
  CHECK(cabs(epsilon_d(1) - Cplx{Real(1), Real(0)}) == 0);
  CHECK(cabs(epsilon_d(3) - Cplx{Real(0), Real(1)}) == 0);
  CHECK(cabs(epsilon_d(5) - Cplx{Real(1), Real(0)}) == 0);
  CHECK(cabs(epsilon_d(-1) - Cplx{Real(0), Real(1)}) == 0);
  CHECK(cabs(epsilon_d(-23) - Cplx{Real(1), Real(0)}) == 0);
  CHECK_THROWS_AS(epsilon_d(2), std::invalid_argument);

  CHECK(jacobi_extended(2, 3) == -1);
  CHECK(jacobi_extended(2, 7) == 1);
  CHECK(jacobi_extended(4, 5) == 1);
  CHECK(jacobi_extended(0, 1) == 1);
  CHECK(jacobi_extended(0, -1) == 1);
  CHECK(jacobi_extended(-3, -1) == -1);
  CHECK(jacobi_extended(3, -1) == 1);
  CHECK(jacobi_extended(576, -23) == 1);
}

TEST_CASE("theta multiplier") {
  PrecGuard prec;
  Real pi = mp_pi();
  // translation for chi12: e^{pi i k0 / M} with a = b = d = 1
  Cplx t = multiplier_chi(12, 1, MoebiusMap{1, 1, 0, 1}, ctx());
  CHECK(cabs(t - cis(pi / 12)) < Real("1e-45"));
  // lower-triangular generators act trivially
  Cplx u = multiplier_chi(12, 1, MoebiusMap{1, 0, 24, 1}, ctx());
  CHECK(cabs(u - Cplx{Real(1), Real(0)}) < Real("1e-45"));
  Cplx v = multiplier_chi(24, 25, MoebiusMap{1, 0, 48, 1}, ctx());
  CHECK(cabs(v - Cplx{Real(1), Real(0)}) < Real("1e-45"));
  // negative d: (1,-1,24,-23) has chi = e^{-pi i/12} since (576/-23) = 1 and
  // epsilon_{-23} = 1
  Cplx w = multiplier_chi(12, 1, MoebiusMap{1, -1, 24, -23}, ctx());
  CHECK(cabs(w - cis(-pi / 12)) < Real("1e-45"));

  CHECK_THROWS_AS(multiplier_chi(3, 1, MoebiusMap{1, 1, 0, 1}, ctx()), std::invalid_argument);
}

TEST_CASE("cusp equivalence basics") {
  CHECK(cusp_equivalent(12, RationalCusp::infinity(), RationalCusp::make(1, 24)).equivalent);
  CHECK(cusp_equivalent(12, RationalCusp::make(0, 1), RationalCusp::make(1, 1)).equivalent);
  CHECK(!cusp_equivalent(2, RationalCusp::infinity(), RationalCusp::make(0, 1)).equivalent);
  CHECK(!cusp_equivalent(2, RationalCusp::infinity(), RationalCusp::make(1, 2)).equivalent);
  CHECK(!cusp_equivalent(2, RationalCusp::make(0, 1), RationalCusp::make(1, 2)).equivalent);

  CuspEquivalence eq = cusp_equivalent(3, RationalCusp::infinity(), RationalCusp::make(1, 6));
  REQUIRE(eq.equivalent);
  REQUIRE(eq.witness.has_value());
  CHECK(in_gamma_M(3, *eq.witness));
  RationalCusp img = apply(*eq.witness, RationalCusp::infinity());
  CHECK(img.p == 1);
  CHECK(img.q == 6);
}

TEST_CASE("cusp equivalence against bounded enumeration") {
  for (long M : {2L, 3L}) {
    std::vector<MoebiusMap> els = gamma_M_elements_bounded(M, 100);
    // sanity: identity present, closed under the inverses that stay bounded
    bool has_id = false;
    for (const auto& g : els)
      if (g.a == 1 && g.b == 0 && g.c == 0 && g.d == 1) has_id = true;
    CHECK(has_id);

    std::vector<RationalCusp> cusps = cusp_grid(8);
    for (std::size_t i = 0; i < cusps.size(); ++i) {
      for (std::size_t j = i; j < cusps.size(); ++j) {
        const RationalCusp& a = cusps[i];
        const RationalCusp& b = cusps[j];
        CuspEquivalence eq = cusp_equivalent(M, a, b);
        if (eq.equivalent) {
          // a verified witness is a complete proof
          REQUIRE(eq.witness.has_value());
          CHECK(in_gamma_M(M, *eq.witness));
          RationalCusp img = apply(*eq.witness, a);
          CHECK(img.p == b.p);
          CHECK(img.q == b.q);
        } else {
          // the decision must not contradict any bounded element
          bool found = false;
          for (const auto& g : els) {
            RationalCusp img = apply(g, a);
            if (img.p == b.p && img.q == b.q) {
              found = true;
              break;
            }
          }
          CHECK(!found);
        }
      }
    }
  }
}

TEST_CASE("B_M and A_M membership") {
  CHECK(in_B_M(12, RationalCusp::make(1, 24)));
  CHECK(in_B_M(12, RationalCusp::make(1, 48)));
  CHECK(in_B_M(12, RationalCusp::infinity()));
  CHECK(!in_B_M(12, RationalCusp::make(0, 1)));
  CHECK(in_B_M(3, RationalCusp::make(1, 6)));
  CHECK(in_B_M(3, RationalCusp::make(1, 12)));

  PeriodicCoeffs chi = char_chi12();
  CHECK(in_A_M(chi, RationalCusp::make(0, 1)));   // primed sum vanishes
  CHECK(in_A_M(chi, RationalCusp::make(1, 24)));  // already in B_M
  PeriodicCoeffs psi = char_psi();
  CHECK(!in_A_M(psi, RationalCusp::make(0, 1)));  // primed sum 1/2
  CHECK(in_A_M(psi, RationalCusp::make(1, 4)));
}