#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmflab/qmf.hpp"

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

TEST_CASE("eichler integral: series and quadrature routes coincide") {
  PrecGuard prec;
  PeriodicCoeffs f = char_chi12();
  for (const char* zs : {"-1.0", "0.25"}) {
    Cplx z{Real(zs), Real("0.1")};
    Cplx a = eichler_tilde(f, z, ctx(), EichlerRoute::series);
    Cplx b = eichler_tilde(f, z, ctx(), EichlerRoute::quadrature);
    CHECK(cabs(a - b) < Real("1e-30"));
  }
}

TEST_CASE("eichler integral at zero has a closed form") {
  PrecGuard prec;
  PeriodicCoeffs f = char_chi12();
  // Theta_chi12(0) = L(-1, chi12) = -2 pins the cusp integral to
  // (4 pi / sqrt 12) e^{-i pi/4}
  Cplx tilde = eichler_tilde_at_cusp(f, RationalCusp::make(0, 1), ctx());
  Cplx expect = cis(-mp_pi() / 4) * (4 * mp_pi() / sqrt(Real(12)));
  CHECK(cabs(tilde - expect) < Real("1e-30"));

  Cplx th = theta_value_at_cusp(f, RationalCusp::make(0, 1), ctx());
  CHECK(cabs(th - Cplx{Real(-2), Real(0)}) < Real("1e-10"));
}

TEST_CASE("theta value at cusps matches the radial L-value") {
  PrecGuard prec;
  PeriodicCoeffs f = char_chi12();
  for (auto [p, q] : {std::pair<long, long>{0, 1}, {1, 24}}) {
    RationalCusp alpha = RationalCusp::make(p, q);
    Cplx via_integral = theta_value_at_cusp(f, alpha, ctx());
    Cplx via_l = radial_value(f, 3, alpha, ctx());
    CHECK(cabs(via_integral - via_l) < Real("1e-10"));
  }
}

TEST_CASE("hat Theta on the lower half plane and at cusps") {
  PrecGuard prec;
  PeriodicCoeffs f = char_false_theta(1, 3);
  // series vs defining integral at an interior point
  Cplx tau{Real("0.125"), Real("-0.333")};
  Cplx a = hat_Theta(f, tau, ctx(), EichlerRoute::series);
  Cplx b = hat_Theta(f, tau, ctx(), EichlerRoute::quadrature);
  CHECK(cabs(a - b) < Real("1e-30"));

  // at a cusp of B_M the hat integral meets the radial limit of theta_f
  RationalCusp alpha = RationalCusp::make(1, 6);
  Cplx hat = hat_Theta_at_cusp(f, alpha, ctx());
  Cplx rad = radial_value(f, 1, alpha, ctx());
  CHECK(cabs(hat - rad) < Real("1e-10"));
}

TEST_CASE("cocycle integrals") {
  PrecGuard prec;
  PeriodicCoeffs f = char_chi12();
  // c = 0 has an empty path
  Cplx r0 = cocycle_r(f, 3, MoebiusMap{1, 1, 0, 1}, Cplx{Real("0.3"), Real(0)}, ctx());
  CHECK(cabs(r0) == 0);

  // the multi-point variant shares nodes but must match single evaluations
  MoebiusMap g{1, 0, 24, 1};
  std::vector<Cplx> xs = {Cplx{Real(0), Real(0)}, Cplx{Real(1) / 24, Real(0)}};
  std::vector<Cplx> multi = cocycle_r_multi(f, 3, g, xs, ctx());
  REQUIRE(multi.size() == 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Cplx single = cocycle_r(f, 3, g, xs[i], ctx());
    CHECK(cabs(multi[i] - single) < Real("1e-35"));
  }
}

TEST_CASE("weight 3/2 quantum residual vanishes") {
  PrecGuard prec;
  PeriodicCoeffs f = char_chi12();
  QmfResidual tr = qmf_residual_32(f, MoebiusMap{1, 1, 0, 1}, RationalCusp::make(0, 1), ctx());
  CHECK(tr.abs_residual < Real("1e-10"));
  QmfResidual inv = qmf_residual_32(f, MoebiusMap{1, 0, 24, 1}, RationalCusp::make(1, 24), ctx());
  CHECK(inv.abs_residual < Real("1e-10"));
}

TEST_CASE("weight 1/2 quantum residual vanishes") {
  PrecGuard prec;
  PeriodicCoeffs f = char_false_theta(1, 3);
  // c = 0: pure consistency of slash factor and multiplier on the lower plane
  QmfResidual a = qmf_residual_12(f, MoebiusMap{1, 2, 0, 1}, Cplx{Real("0.3"), Real("-0.7")}, ctx());
  CHECK(a.abs_residual < Real("1e-10"));
  // c != 0 exercises the cocycle quadrature
  QmfResidual b = qmf_residual_12(f, MoebiusMap{1, 0, 6, 1}, Cplx{Real(0), Real(-1)}, ctx());
  CHECK(b.abs_residual < Real("1e-10"));
  // and the cusp variant on B_M
  QmfResidual c = qmf_residual_12_at_cusp(f, MoebiusMap{1, 0, 6, 1}, RationalCusp::make(1, 12), ctx());
  CHECK(c.abs_residual < Real("1e-10"));
}

TEST_CASE("infinite order agreement at zero") {
  PrecGuard prec;
  PeriodicCoeffs f = char_false_theta(1, 3);
  AgreementReport rep = infinite_order_agreement(f, RationalCusp::make(0, 1), 2, ctx());
  CHECK(rep.max_dev < Real("1e-6"));
  REQUIRE(rep.theta_fit.size() == 3);
  // the fitted constant term is L(0, C) = 1/3
  CHECK(cabs(rep.theta_fit[0] - Cplx{Real(1) / 3, Real(0)}) < Real("1e-6"));
  CHECK(cabs(rep.hat_fit[0] - Cplx{Real(1) / 3, Real(0)}) < Real("1e-6"));
}
