#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmflab/theta.hpp"

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

TEST_CASE("chi12 theta is the Dedekind eta function") {
  PrecGuard prec;
  PeriodicCoeffs f = char_chi12();
  // eta(i) = Gamma(1/4) / (2 pi^{3/4})
  Cplx eta_i{Real("0.768225422326056659002594179576180644517866914"), Real(0)};
  CHECK(cabs(theta_f_direct(f, Cplx{Real(0), Real(1)}, ctx()) - eta_i) < Real("1e-43"));
  CHECK(cabs(product_form(f, Cplx{Real(0), Real(1)}, ctx()) - eta_i) < Real("1e-43"));

  Cplx z{Real("0.3"), Real("0.8")};
  Cplx eta_z{Real("0.810601561900056336240004579559882234279319163"),
             Real("0.0587395541717629888085454820977505243580248226")};
  CHECK(cabs(theta_f_direct(f, z, ctx()) - eta_z) < Real("1e-43"));
  CHECK(cabs(product_form(f, z, ctx()) - eta_z) < Real("1e-43"));
}

TEST_CASE("reference values for psi and a false theta") {
  PrecGuard prec;
  Cplx i{Real(0), Real(1)};
  Cplx psi_i{Real("0.207880301298013516157253568142371962324436537"), Real(0)};
  CHECK(cabs(theta_f_direct(char_psi(), i, ctx()) - psi_i) < Real("1e-43"));

  Cplx f13_i{Real("0.320590778964863849750035704594852812764438563"), Real(0)};
  CHECK(cabs(theta_f_direct(char_false_theta(1, 3), i, ctx(), true) - f13_i) < Real("1e-43"));
}

TEST_CASE("serial reference equals the parallel kernel") {
  PrecGuard prec;
  for (const char* name : {"chi12", "false:3:8", "hikami:2:1"}) {
    PeriodicCoeffs f = build_by_name(name);
    for (bool weighted : {false, true}) {
      Cplx z{Real("0.21"), Real("0.3")};
      Cplx a = theta_f_direct(f, z, ctx(), weighted);
      Cplx b = theta_f_direct_serial(f, z, ctx(), weighted);
      CHECK(cabs(a - b) < Real("1e-55"));
    }
  }
}

TEST_CASE("unary decomposition") {
  PrecGuard prec;
  Cplx z{Real("0.17"), Real("0.6")};

  // psi is supported on the single class 1 mod 2; the bilateral sum counts
  // each positive term twice
  Cplx lhs = theta_f_direct(char_psi(), z, ctx());
  Cplx rhs = theta_unary(z, 1, 2, ctx());
  rhs = rhs / Real(2);
  CHECK(cabs(lhs - rhs) < Real("1e-45"));

  Cplx l12 = theta_f_direct(char_chi12(), z, ctx());
  Cplx r12 = theta_unary(z, 1, 12, ctx()) - theta_unary(z, 5, 12, ctx());
  CHECK(cabs(l12 - r12) < Real("1e-45"));

  Cplx lf = theta_f_direct(char_false_theta(1, 3), z, ctx(), true);
  Cplx rf = Theta_unary(z, 1, 3, ctx());
  CHECK(cabs(lf - rf) < Real("1e-45"));
}

TEST_CASE("product form matches the series for even builders") {
  PrecGuard prec;
  Cplx z{Real("-0.37"), Real("0.45")};
  for (const char* name : {"chi12", "chi_t:2", "hikami:2:0", "hikami:2:1", "psi"}) {
    PeriodicCoeffs f = build_by_name(name);
    CHECK(cabs(theta_f_direct(f, z, ctx()) - product_form(f, z, ctx())) < Real("1e-42"));
  }
}

TEST_CASE("routing below the crossover is invisible") {
  PrecGuard prec;
  PeriodicCoeffs chi = char_chi12();
  for (const char* zs : {"0.37", "-0.2"}) {
    for (const char* ys : {"0.015", "0.001"}) {
      Cplx z{Real(zs), Real(ys)};
      CHECK(cabs(theta_f(chi, z, ctx()) - theta_f_direct(chi, z, ctx())) < Real("1e-42"));
      CHECK(cabs(Theta_f(chi, z, ctx()) - theta_f_direct(chi, z, ctx(), true)) < Real("1e-42"));
    }
  }
  PeriodicCoeffs f13 = char_false_theta(1, 3);
  Cplx z{Real("0.25"), Real("0.004")};
  CHECK(cabs(Theta_f(f13, z, ctx()) - theta_f_direct(f13, z, ctx(), true)) < Real("1e-42"));
  CHECK(cabs(theta_f(f13, z, ctx()) - theta_f_direct(f13, z, ctx())) < Real("1e-42"));
}

TEST_CASE("dual expansion agrees with the direct series") {
  PrecGuard prec;
  PeriodicCoeffs chi = char_chi12();
  Cplx z{Real("0.25"), Real("0.018")};
  CHECK(cabs(theta_dual_sum(chi, z, ctx()) - theta_f_direct(chi, z, ctx())) < Real("1e-40"));

  PeriodicCoeffs psi = char_psi();
  Cplx w{Real("0.1"), Real("0.05")};
  CHECK(cabs(theta_dual_sum(psi, w, ctx()) - theta_f_direct(psi, w, ctx())) < Real("1e-40"));
}

TEST_CASE("decay check at a rational") {
  PrecGuard prec;
  DecayCheck dc = decay_at_rational(char_chi12(), RationalCusp::make(1, 5), Real("0.05"), ctx());
  CHECK(cabs(dc.diff) < Real("1e-25"));
}

TEST_CASE("transformation residuals vanish on the group") {
  PrecGuard prec;
  Cplx z{Real("0.25"), Real("0.4")};

  PeriodicCoeffs chi = char_chi12();
  CHECK(cabs(transform_residual_theta(chi, MoebiusMap{1, 0, 24, 1}, z, ctx())) < Real("1e-40"));
  CHECK(cabs(transform_residual_theta(chi, MoebiusMap{1, 1, 0, 1}, z, ctx())) < Real("1e-40"));

  PeriodicCoeffs c2 = char_chi_t(2);
  CHECK(cabs(transform_residual_theta(c2, MoebiusMap{1, 0, 48, 1}, z, ctx())) < Real("1e-40"));

  PeriodicCoeffs f13 = char_false_theta(1, 3);
  CHECK(cabs(transform_residual_Theta(f13, MoebiusMap{1, 2, 0, 1}, z, ctx())) < Real("1e-40"));
  CHECK(cabs(transform_residual_Theta(f13, MoebiusMap{7, 2, 24, 7}, z, ctx())) < Real("1e-40"));

  // not in Gamma_3: b odd
  CHECK_THROWS_AS(transform_residual_Theta(f13, MoebiusMap{1, 1, 0, 1}, z, ctx()),
                  std::invalid_argument);
}
