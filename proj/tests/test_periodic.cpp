#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmflab/periodic.hpp"

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

TEST_CASE("chi12 builder") {
  PeriodicCoeffs f = char_chi12();
  CHECK(f.M == 12);
  CHECK(f.k0 == 1);
  CHECK(f.is_even());
  CHECK(f.Mf == std::vector<long>{1, 5});
  CHECK(f.at(1) == GaussRat(1));
  CHECK(f.at(5) == GaussRat(-1));
  CHECK(f.at(7) == GaussRat(-1));
  CHECK(f.at(11) == GaussRat(1));
  CHECK(f.at(0).is_zero());
  CHECK(f.at(2).is_zero());
  // periodicity and evenness through the accessor
  CHECK(f.at(13) == GaussRat(1));
  CHECK(f.at(-1) == GaussRat(1));
  CHECK(f.at(-5) == GaussRat(-1));
}

TEST_CASE("chi_t builders") {
  PeriodicCoeffs f2 = char_chi_t(2);
  CHECK(f2.M == 24);
  CHECK(f2.k0 == 25);
  CHECK(f2.is_even());
  CHECK(f2.Mf == std::vector<long>{5, 11});
  CHECK(f2.at(5) == GaussRat(1));
  CHECK(f2.at(19) == GaussRat(1));
  CHECK(f2.at(11) == GaussRat(-1));
  CHECK(f2.at(13) == GaussRat(-1));

  // chi_1 is chi12
  PeriodicCoeffs f1 = char_chi_t(1);
  PeriodicCoeffs g = char_chi12();
  CHECK(f1.M == g.M);
  CHECK(f1.k0 == g.k0);
  for (long n = 0; n < f1.M; ++n) CHECK(f1.at(n) == g.at(n));

  PeriodicCoeffs f3 = char_chi_t(3);
  CHECK(f3.M == 48);
  CHECK(f3.at(13) == GaussRat(1));   // 2^{t+1} - 3
  CHECK(f3.at(35) == GaussRat(1));   // 3 + 2^{t+2}
  CHECK(f3.at(19) == GaussRat(-1));  // 2^{t+1} + 3
  CHECK(f3.at(29) == GaussRat(-1));  // 2^{t+2} - 3
  CHECK(f3.k0 == 169 % 96);
}

TEST_CASE("hikami builders") {
  PeriodicCoeffs h0 = char_hikami(2, 0);
  CHECK(h0.M == 20);
  CHECK(h0.k0 == 9);
  CHECK(h0.is_even());
  CHECK(h0.Mf == std::vector<long>{3, 7});
  CHECK(h0.at(3) == GaussRat(1));
  CHECK(h0.at(17) == GaussRat(1));
  CHECK(h0.at(7) == GaussRat(-1));
  CHECK(h0.at(13) == GaussRat(-1));

  PeriodicCoeffs h1 = char_hikami(2, 1);
  CHECK(h1.M == 20);
  CHECK(h1.k0 == 1);
  CHECK(h1.Mf == std::vector<long>{1, 9});
  CHECK(h1.at(1) == GaussRat(1));
  CHECK(h1.at(19) == GaussRat(1));
  CHECK(h1.at(9) == GaussRat(-1));
  CHECK(h1.at(11) == GaussRat(-1));

  CHECK_THROWS_AS(char_hikami(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(char_hikami(0, 0), std::invalid_argument);
}

TEST_CASE("false theta and psi builders") {
  PeriodicCoeffs f = char_false_theta(1, 3);
  CHECK(f.M == 3);
  CHECK(f.k0 == 1);
  CHECK(f.is_odd());
  CHECK(f.Mf == std::vector<long>{1});
  CHECK(f.at(1) == GaussRat(1));
  CHECK(f.at(2) == GaussRat(-1));

  PeriodicCoeffs g = char_false_theta(3, 8);
  CHECK(g.M == 8);
  CHECK(g.k0 == 9);
  CHECK(g.is_odd());
  CHECK(g.at(3) == GaussRat(1));
  CHECK(g.at(5) == GaussRat(-1));

  PeriodicCoeffs p = char_psi();
  CHECK(p.M == 2);
  CHECK(p.k0 == 1);
  CHECK(p.is_even());
  CHECK(p.Mf == std::vector<long>{1});
  CHECK(p.at(1) == GaussRat(1));
}

TEST_CASE("build_by_name and spellings") {
  CHECK(build_by_name("chi12").M == 12);
  CHECK(build_by_name("chi_t:2").M == 24);
  CHECK(build_by_name("hikami:2:1").M == 20);
  CHECK(build_by_name("false:3:8").M == 8);
  CHECK(build_by_name("psi").M == 2);
  CHECK(build_by_name("chi12").label == "chi12");
  CHECK(build_by_name("hikami:2:1").label == "hikami:2:1");
  CHECK_THROWS_AS(build_by_name("nope"), std::invalid_argument);
  CHECK_THROWS_AS(build_by_name("false:1"), std::invalid_argument);
}

TEST_CASE("make_periodic validation") {
  using V = std::vector<GaussRat>;
  // M too small
  CHECK_THROWS_AS(make_periodic(1, V{GaussRat(0)}, 1, Parity::even), std::invalid_argument);
  // f(0) must vanish
  CHECK_THROWS_AS(make_periodic(3, V{GaussRat(1), GaussRat(1), GaussRat(-1)}, 1, Parity::odd),
                  std::invalid_argument);
  // parity has to be stated
  CHECK_THROWS_AS(make_periodic(3, V{GaussRat(0), GaussRat(1), GaussRat(-1)}, 1, Parity::none),
                  std::invalid_argument);
  // folded support must satisfy k^2 = k0 mod 2M: f(2) with k0 = 1, M = 4
  CHECK_THROWS_AS(
      make_periodic(4, V{GaussRat(0), GaussRat(0), GaussRat(1), GaussRat(0)}, 1, Parity::even),
      std::invalid_argument);
  // declared parity must hold
  CHECK_THROWS_AS(make_periodic(3, V{GaussRat(0), GaussRat(1), GaussRat(1)}, 1, Parity::odd),
                  std::invalid_argument);
  // a valid odd example: the folded representative of 2 is 1, same class
  PeriodicCoeffs ok = make_periodic(3, V{GaussRat(0), GaussRat(1), GaussRat(-1)}, 1, Parity::odd);
  CHECK(ok.is_odd());
  CHECK(ok.Mf == std::vector<long>{1});
}

TEST_CASE("parity decomposition") {
  PeriodicCoeffs even = char_chi12();
  ParityParts parts = decompose(even);
  REQUIRE(parts.even.has_value());
  CHECK(!parts.odd.has_value());
  for (long n = 0; n < 12; ++n) CHECK(parts.even->at(n) == even.at(n));

  PeriodicCoeffs odd = char_false_theta(1, 3);
  ParityParts op = decompose(odd);
  REQUIRE(op.odd.has_value());
  CHECK(!op.even.has_value());
  CHECK(op.odd->at(1) == GaussRat(1));
  CHECK(op.odd->at(2) == GaussRat(-1));
}

TEST_CASE("primed sum") {
  CHECK(primed_sum(char_psi()) == GaussRat(Rat(1, 2)));  // k = M/2 counts half
  CHECK(primed_sum(char_chi12()).is_zero());
  CHECK(primed_sum(char_false_theta(1, 3)) == GaussRat(1));
  CHECK(primed_sum(char_chi_t(2)).is_zero());
  CHECK(primed_sum(char_hikami(2, 0)).is_zero());
}

TEST_CASE("decay constant c_f") {
  PrecGuard prec;
  Cplx c12 = c_f_constant(char_chi12(), ctx());
  CHECK(cabs(c12 - Cplx{2 * sqrt(Real(3)), Real(0)}) < Real("1e-45"));
  Cplx cpsi = c_f_constant(char_psi(), ctx());
  CHECK(cabs(cpsi - Cplx{Real(-1), Real(0)}) < Real("1e-45"));
}

TEST_CASE("json round trip") {
  PeriodicCoeffs f = char_chi_t(2);
  std::string text = coeffs_to_json(f);
  PeriodicCoeffs g = coeffs_from_json(text);
  CHECK(g.M == f.M);
  CHECK(g.k0 == f.k0);
  CHECK(g.parity == f.parity);
  CHECK(g.Mf == f.Mf);
  for (long n = 0; n < f.M; ++n) CHECK(g.at(n) == f.at(n));

  CHECK_THROWS_AS(coeffs_from_json("{\"M\": 12}"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("not json"), std::invalid_argument);
}
