// qmflab: command line front end for the quantum modularity laboratory.
//
// Exit codes: 0 when every emitted check passes (value commands count as
// passing), 1 when at least one verification record fails, 2 on usage or
// configuration errors (unknown builder, unknown suite, malformed input,
// precision below the supported floor).

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmflab/lvalues.hpp"
#include "qmflab/modgroup.hpp"
#include "qmflab/periodic.hpp"
#include "qmflab/precision.hpp"
#include "qmflab/qknots.hpp"
#include "qmflab/qmf.hpp"
#include "qmflab/theta.hpp"
#include "qmflab/verify.hpp"

namespace {

using namespace qmflab;
using nlohmann::ordered_json;

struct Options {
  unsigned prec = 0;  // 0: unset, resolved via QMFLAB_PREC then the default 50
  int jobs = 1;
  std::string format = "json";
  std::string fspec = "chi12";
  std::string config_path;
  std::string tolerance;  // empty: per-command default
};

unsigned resolve_prec(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("QMFLAB_PREC")) {
    std::string s(env);
    if (!s.empty()) {
      std::size_t pos = 0;
      long v = 0;
      try {
        v = std::stol(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || v <= 0)
        throw std::invalid_argument("QMFLAB_PREC must be a positive integer, got \"" + s + "\"");
      return static_cast<unsigned>(v);
    }
  }
  return 50;
}

PeriodicCoeffs load_builder(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    const std::string path = spec.substr(1);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coefficient file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return coeffs_from_json(ss.str());
  }
  return build_by_name(spec);
}

MoebiusMap parse_gamma(const std::string& text) {
  std::istringstream is(text);
  MoebiusMap g;
  if (!(is >> g.a >> g.b >> g.c >> g.d))
    throw std::invalid_argument("gamma must be four integers \"a b c d\", got \"" + text + "\"");
  std::string rest;
  if (is >> rest)
    throw std::invalid_argument("gamma must be four integers \"a b c d\", got \"" + text + "\"");
  if (g.det() != 1) throw std::invalid_argument("gamma must have determinant 1: " + text);
  return g;
}

std::string num(const Real& x, unsigned digits) {
  return x.str(digits, std::ios_base::scientific);
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string gauss_str(const GaussRat& g) {
  if (g.im == 0) return rat_str(g.re);
  std::string s = rat_str(g.re);
  s += (g.im < 0) ? " - " : " + ";
  Rat a = g.im < 0 ? Rat(-g.im) : g.im;
  s += rat_str(a) + "*i";
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_value(const ordered_json& j, const Options& opt) {
  if (opt.format == "csv") {
    std::string header, row;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) {
        header += ',';
        row += ',';
      }
      first = false;
      header += it.key();
      const auto& v = it.value();
      row += csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::cout << header << "\n" << row << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

int emit_records(const std::vector<VerificationRecord>& recs, const Options& opt,
                 unsigned digits) {
  bool all_pass = true;
  if (opt.format == "csv") std::cout << csv_header() << "\n";
  for (const auto& r : recs) {
    if (opt.format == "csv")
      std::cout << record_to_csv(r, digits) << "\n";
    else
      std::cout << record_to_json(r, digits) << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

Real tolerance_or(const Options& opt, const char* fallback) {
  return Real(opt.tolerance.empty() ? std::string(fallback) : opt.tolerance);
}

VerificationRecord make_record(std::string name, ordered_json inputs, const Cplx& lhs,
                               const Cplx& rhs, const Real& residual, const Real& tol) {
  VerificationRecord r;
  r.suite = "cli";
  r.name = std::move(name);
  r.inputs = inputs.dump();
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = residual;
  r.tolerance = tol;
  r.pass = residual <= tol;
  return r;
}

// Exact cyclotomic renderings stay readable up to this ring order; beyond it
// only the floating image is printed.
constexpr long long kExactOrderCap = 128;

void attach_exact(ordered_json& j, const CycloRing::Elem& e, const CycloRing& ring) {
  ordered_json coords = ordered_json::array();
  for (const auto& c : e) coords.push_back(gauss_str(c));
  j["cyclo_order"] = ring.order();
  j["exact_coords"] = std::move(coords);
}

struct KnotValue {
  Cplx value;
  bool have_exact = false;
  CycloRing::Elem exact;
  long long order = 0;
};

template <typename FloatFn, typename ExactFn>
KnotValue knot_eval(const RootOfUnity& z, FloatFn&& ff, ExactFn&& ef,
                    const PrecisionContext& ctx) {
  KnotValue out;
  out.value = ff(z, ctx);
  if (z.p == 1 % z.N && z.N <= kExactOrderCap) {
    const CycloRing& ring = cyclo_ring(z.N);
    out.exact = ef(ring);
    out.have_exact = true;
    out.order = z.N;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"quantum modularity laboratory for partial theta series"};
  app.require_subcommand(1);

  app.add_option("--prec", opt.prec,
                 "working precision in decimal digits (default 50; env QMFLAB_PREC overrides "
                 "the default, the flag overrides both)");
  app.add_option("--jobs", opt.jobs, "worker threads for suite runs")->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--f", opt.fspec, "coefficient builder name, or @file.json");
  app.add_option("--config", opt.config_path,
                 "suite defaults JSON file (default: copy embedded at build time)");
  app.add_option("--tolerance", opt.tolerance, "override the pass/fail tolerance");

  std::function<int()> action;
  const PrecisionContext* ctxp = nullptr;  // set after parsing, before action()

  // ---- theta ----
  auto* theta = app.add_subcommand("theta", "evaluate theta series and their modular residuals");
  theta->require_subcommand(1);
  theta->fallthrough();

  struct {
    std::string z;
    bool weighted = false;
  } th_eval;
  auto* theta_eval = theta->add_subcommand("eval", "evaluate theta_f (or Theta_f) at z");
  theta_eval->fallthrough();
  theta_eval->add_option("--z", th_eval.z, "point in the upper half plane, \"x+yi\"")->required();
  theta_eval->add_flag("--weighted", th_eval.weighted, "weighted series Theta_f");
  theta_eval->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      PeriodicCoeffs f = load_builder(opt.fspec);
      Cplx z = parse_complex(th_eval.z);
      if (!(z.im > 0)) throw std::invalid_argument("theta eval needs Im z > 0");
      Cplx v = th_eval.weighted ? Theta_f(f, z, ctx) : theta_f(f, z, ctx);
      ordered_json j;
      j["command"] = "theta eval";
      j["f"] = f.label;
      j["z"] = th_eval.z;
      j["weighted"] = th_eval.weighted;
      j["value_re"] = num(v.re, ctx.digits);
      j["value_im"] = num(v.im, ctx.digits);
      emit_value(j, opt);
      return 0;
    };
  });

  struct {
    std::string gamma, z;
  } th_tr;
  auto* theta_tr = theta->add_subcommand(
      "transform", "residual of the weight 1/2 or 3/2 transformation law at z");
  theta_tr->fallthrough();
  theta_tr->add_option("--gamma", th_tr.gamma, "group element \"a b c d\"")->required();
  theta_tr->add_option("--z", th_tr.z, "point in the upper half plane")->required();
  theta_tr->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      PeriodicCoeffs f = load_builder(opt.fspec);
      MoebiusMap g = parse_gamma(th_tr.gamma);
      Cplx z = parse_complex(th_tr.z);
      if (!(z.im > 0)) throw std::invalid_argument("theta transform needs Im z > 0");
      Cplx d = f.is_even() ? transform_residual_theta(f, g, z, ctx)
                           : transform_residual_Theta(f, g, z, ctx);
      ordered_json in;
      in["f"] = f.label;
      in["gamma"] = th_tr.gamma;
      in["z"] = th_tr.z;
      VerificationRecord r = make_record("theta-transform", in, d, Cplx{},
                                         cabs(d), tolerance_or(opt, "1e-35"));
      return emit_records({r}, opt, ctx.digits);
    };
  });

  // ---- lvalue ----
  struct {
    std::string alpha;
    unsigned n = 0;
  } lv;
  auto* lvalue = app.add_subcommand("lvalue", "exact L(-n, C_{f,alpha}) at a rational alpha");
  lvalue->fallthrough();
  lvalue->add_option("--alpha", lv.alpha, "rational point p/q")->required();
  lvalue->add_option("--n", lv.n, "order: evaluates L(-n, C)")->required();
  lvalue->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      PeriodicCoeffs f = load_builder(opt.fspec);
      auto [p, q] = parse_rational(lv.alpha);
      RationalCusp alpha = RationalCusp::make(p, q);
      ordered_json j;
      j["command"] = "lvalue";
      j["f"] = f.label;
      j["alpha"] = lv.alpha;
      j["n"] = lv.n;
      try {
        ExactLValue L = l_at_negative_int(build_C(f, alpha), lv.n, ctx);
        j["divergent"] = false;
        j["cyclo_order"] = L.cyclo_order;
        j["value_re"] = num(L.value.re, ctx.digits);
        j["value_im"] = num(L.value.im, ctx.digits);
        j["is_gauss_rational"] = L.is_gauss_rational;
        if (L.is_gauss_rational) {
          j["exact"] = gauss_str(L.rational_value);
        } else if (L.cyclo_order <= kExactOrderCap) {
          ordered_json coords = ordered_json::array();
          for (const auto& c : L.cyclo_coeffs) coords.push_back(gauss_str(c));
          j["exact_coords"] = std::move(coords);
        }
      } catch (const DivergentAtCusp&) {
        // nonzero mean: the L-value does not exist there, which is an answer,
        // not a failure
        j["divergent"] = true;
      }
      emit_value(j, opt);
      return 0;
    };
  });

  // ---- qmf ----
  auto* qmf = app.add_subcommand("qmf", "quantum modular form checks");
  qmf->require_subcommand(1);
  qmf->fallthrough();

  struct {
    std::string gamma, alpha, tau;
  } qv;
  auto* qmf_verify = qmf->add_subcommand(
      "verify", "residual of the quantum modular identity for gamma at a cusp or lower tau");
  qmf_verify->fallthrough();
  qmf_verify->add_option("--gamma", qv.gamma, "group element \"a b c d\"")->required();
  qmf_verify->add_option("--alpha", qv.alpha, "rational point (weight 3/2, or 1/2 at a cusp)");
  qmf_verify->add_option("--tau", qv.tau, "lower half plane point (weight 1/2 only)");
  qmf_verify->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      PeriodicCoeffs f = load_builder(opt.fspec);
      MoebiusMap g = parse_gamma(qv.gamma);
      QmfResidual res;
      ordered_json in;
      in["f"] = f.label;
      in["gamma"] = qv.gamma;
      std::string name;
      if (f.is_even()) {
        if (qv.alpha.empty() || !qv.tau.empty())
          throw std::invalid_argument("even f: qmf verify takes --alpha (weight 3/2)");
        auto [p, q] = parse_rational(qv.alpha);
        res = qmf_residual_32(f, g, RationalCusp::make(p, q), ctx);
        in["alpha"] = qv.alpha;
        name = "qmf-verify-3/2";
      } else if (!qv.tau.empty()) {
        if (!qv.alpha.empty())
          throw std::invalid_argument("qmf verify takes --alpha or --tau, not both");
        Cplx tau = parse_complex(qv.tau);
        if (!(tau.im < 0))
          throw std::invalid_argument("odd f: --tau must lie in the lower half plane");
        res = qmf_residual_12(f, g, tau, ctx);
        in["tau"] = qv.tau;
        name = "qmf-verify-1/2";
      } else if (!qv.alpha.empty()) {
        auto [p, q] = parse_rational(qv.alpha);
        res = qmf_residual_12_at_cusp(f, g, RationalCusp::make(p, q), ctx);
        in["alpha"] = qv.alpha;
        name = "qmf-verify-1/2-cusp";
      } else {
        throw std::invalid_argument("odd f: qmf verify needs --tau or --alpha");
      }
      VerificationRecord r =
          make_record(name, in, res.value_at_alpha, res.value_at_alpha - res.residual,
                      res.abs_residual, tolerance_or(opt, "1e-10"));
      return emit_records({r}, opt, ctx.digits);
    };
  });

  struct {
    std::string gamma, x;
  } qc;
  auto* qmf_cocycle = qmf->add_subcommand("cocycle", "period integral r_{gamma,f}(x)");
  qmf_cocycle->fallthrough();
  qmf_cocycle->add_option("--gamma", qc.gamma, "group element \"a b c d\"")->required();
  qmf_cocycle->add_option("--x", qc.x, "evaluation point (real values allowed)")->required();
  qmf_cocycle->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      PeriodicCoeffs f = load_builder(opt.fspec);
      MoebiusMap g = parse_gamma(qc.gamma);
      Cplx x = parse_complex(qc.x);
      int weight2 = f.is_even() ? 3 : 1;
      Cplx r = cocycle_r(f, weight2, g, x, ctx);
      ordered_json j;
      j["command"] = "qmf cocycle";
      j["f"] = f.label;
      j["gamma"] = qc.gamma;
      j["x"] = qc.x;
      j["weight2"] = weight2;
      j["value_re"] = num(r.re, ctx.digits);
      j["value_im"] = num(r.im, ctx.digits);
      emit_value(j, opt);
      return 0;
    };
  });

  // ---- knots ----
  auto* knots = app.add_subcommand("knots", "Kontsevich-Zagier series, colored Jones values");
  knots->require_subcommand(1);
  knots->fallthrough();

  auto emit_knot = [&](const char* command, ordered_json inputs, const KnotValue& kv) {
    const auto& ctx = *ctxp;
    ordered_json j;
    j["command"] = command;
    for (auto it = inputs.begin(); it != inputs.end(); ++it) j[it.key()] = it.value();
    j["value_re"] = num(kv.value.re, ctx.digits);
    j["value_im"] = num(kv.value.im, ctx.digits);
    if (kv.have_exact) attach_exact(j, kv.exact, cyclo_ring(kv.order));
    emit_value(j, opt);
    return 0;
  };

  struct {
    std::string alpha;
  } kf;
  auto* knots_F = knots->add_subcommand("F", "F(e^{2 pi i alpha}) for the trefoil series");
  knots_F->fallthrough();
  knots_F->add_option("--alpha", kf.alpha, "rational p/N, root of unity exponent")->required();
  knots_F->callback([&] {
    action = [&]() -> int {
      auto [p, q] = parse_rational(kf.alpha);
      RootOfUnity z = RootOfUnity::make(p, q);
      ordered_json in;
      in["alpha"] = kf.alpha;
      return emit_knot("knots F", in,
                       knot_eval(z, [](const RootOfUnity& w, const PrecisionContext& c) { return kz_F(w, c); },
                                 [](const CycloRing& ring) { return kz_F_exact(ring); }, *ctxp));
    };
  });

  struct {
    int t = 2;
    std::string alpha;
    long long N = 0;
  } kft;
  auto* knots_Ft = knots->add_subcommand("Ft", "F_t(e^{2 pi i alpha}) for T(3, 2^t)");
  knots_Ft->fallthrough();
  knots_Ft->add_option("--t", kft.t, "torus knot exponent, T(3, 2^t)")->required();
  knots_Ft->add_option("--alpha", kft.alpha, "rational p/N");
  knots_Ft->add_option("--N", kft.N, "shorthand for alpha = 1/N");
  knots_Ft->callback([&] {
    action = [&]() -> int {
      if (kft.alpha.empty() == (kft.N == 0))
        throw std::invalid_argument("knots Ft needs exactly one of --alpha, --N");
      RootOfUnity z = kft.alpha.empty()
                          ? RootOfUnity::make(1, kft.N)
                          : [&] {
                              auto [p, q] = parse_rational(kft.alpha);
                              return RootOfUnity::make(p, q);
                            }();
      ordered_json in;
      in["t"] = kft.t;
      in["alpha"] = std::to_string(z.p) + "/" + std::to_string(z.N);
      int t = kft.t;
      return emit_knot(
          "knots Ft", in,
          knot_eval(z,
                    [t](const RootOfUnity& w, const PrecisionContext& c) { return kz_Ft(t, w, c); },
                    [t](const CycloRing& ring) { return kz_Ft_exact(t, ring); }, *ctxp));
    };
  });

  struct {
    int m = 2, el = 0;
    std::string alpha;
  } kx;
  auto* knots_X = knots->add_subcommand("X", "Hikami's X_m^{(el)} at a root of unity");
  knots_X->fallthrough();
  knots_X->add_option("--m", kx.m, "number of nested sums")->required();
  knots_X->add_option("--el", kx.el, "superscript, 0 <= el <= m-1")->required();
  knots_X->add_option("--alpha", kx.alpha, "rational p/N")->required();
  knots_X->callback([&] {
    action = [&]() -> int {
      auto [p, q] = parse_rational(kx.alpha);
      RootOfUnity z = RootOfUnity::make(p, q);
      ordered_json in;
      in["m"] = kx.m;
      in["el"] = kx.el;
      in["alpha"] = kx.alpha;
      int m = kx.m, el = kx.el;
      return emit_knot(
          "knots X", in,
          knot_eval(z,
                    [m, el](const RootOfUnity& w, const PrecisionContext& c) {
                      return hikami_X(m, el, w, c);
                    },
                    [m, el](const CycloRing& ring) { return hikami_X_exact(m, el, ring); },
                    *ctxp));
    };
  });

  struct {
    int t = 1;
    long long N = 0;
  } kj;
  auto* knots_jones = knots->add_subcommand("jones", "colored Jones J_N(T(3, 2^t); zeta_N)");
  knots_jones->fallthrough();
  knots_jones->add_option("--t", kj.t, "torus knot exponent (1 for the trefoil)");
  knots_jones->add_option("--N", kj.N, "color, evaluated at zeta_N = e^{2 pi i / N}")->required();
  knots_jones->callback([&] {
    action = [&]() -> int {
      if (kj.N < 1) throw std::invalid_argument("knots jones needs N >= 1");
      RootOfUnity z = RootOfUnity::make(1, kj.N);
      ordered_json in;
      in["t"] = kj.t;
      in["N"] = kj.N;
      int t = kj.t;
      long long N = kj.N;
      return emit_knot(
          "knots jones", in,
          knot_eval(z,
                    [t, N](const RootOfUnity& w, const PrecisionContext& c) {
                      return t == 1 ? jones_t32(N, w, c) : jones_t32t(t, N, w, c);
                    },
                    [t, N](const CycloRing& ring) {
                      return t == 1 ? jones_t32_exact(ring, N) : jones_t32t_exact(t, ring, N);
                    },
                    *ctxp));
    };
  });

  struct {
    std::string side;
    std::string alpha = "0";
  } ks;
  auto* knots_strange = knots->add_subcommand(
      "strange", "order 0 strange identity check: phased finite value vs -L(-1)/2");
  knots_strange->fallthrough();
  knots_strange->add_option("--side", ks.side, "F, Ft:t, X:m:el, or V")->required();
  knots_strange->add_option("--alpha", ks.alpha, "rational p/N (ignored for V)");
  knots_strange->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      auto [p, q] = parse_rational(ks.alpha);
      StrangeCheck sc = strange_check(ks.side, RootOfUnity::make(p, q), ctx);
      ordered_json in;
      in["side"] = ks.side;
      in["alpha"] = ks.alpha;
      VerificationRecord r = make_record("strange/" + ks.side + "@" + ks.alpha, in, sc.lhs,
                                         sc.rhs, cabs(sc.diff), tolerance_or(opt, "1e-10"));
      return emit_records({r}, opt, ctx.digits);
    };
  });

  // ---- modgroup ----
  auto* modgroup = app.add_subcommand("modgroup", "Gamma_M cusp bookkeeping");
  modgroup->require_subcommand(1);
  modgroup->fallthrough();

  struct {
    long M = 2;
    std::string alpha, beta;
  } ce;
  auto* cusp_eq = modgroup->add_subcommand("cusp-equiv", "decide Gamma_M equivalence of cusps");
  cusp_eq->fallthrough();
  cusp_eq->add_option("--M", ce.M, "period of the coefficient function")->required();
  cusp_eq->add_option("--alpha", ce.alpha, "cusp p/q, or inf")->required();
  cusp_eq->add_option("--beta", ce.beta, "cusp p/q, or inf")->required();
  cusp_eq->callback([&] {
    action = [&]() -> int {
      RationalCusp a = parse_cusp(ce.alpha);
      RationalCusp b = parse_cusp(ce.beta);
      CuspEquivalence eq = cusp_equivalent(ce.M, a, b);
      ordered_json j;
      j["command"] = "modgroup cusp-equiv";
      j["M"] = ce.M;
      j["alpha"] = a.str();
      j["beta"] = b.str();
      j["equivalent"] = eq.equivalent;
      if (eq.witness)
        j["witness"] = eq.witness->str();
      else
        j["witness"] = nullptr;
      emit_value(j, opt);
      return 0;
    };
  });

  // ---- suite ----
  auto* suite = app.add_subcommand("suite", "configured verification batteries");
  suite->require_subcommand(1);
  suite->fallthrough();

  struct {
    std::string name;
  } sr;
  auto* suite_run = suite->add_subcommand("run", "run one suite and emit its records");
  suite_run->fallthrough();
  suite_run->add_option("name", sr.name, "transforms, decay, agreement, qmf32, qmf12, strange")
      ->required();
  suite_run->callback([&] {
    action = [&]() -> int {
      const auto& ctx = *ctxp;
      SuiteConfig cfg;
      cfg.ctx = ctx;
      cfg.jobs = opt.jobs;
      if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + opt.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg.defaults_json = ss.str();
      }
      if (!opt.tolerance.empty()) cfg.tolerance_override = Real(opt.tolerance);
      std::vector<VerificationRecord> recs = run_suite(sr.name, cfg);
      return emit_records(recs, opt, ctx.digits);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    PrecisionContext ctx = PrecisionContext::make(resolve_prec(opt.prec));
    ScopedPrecision guard(ctx.digits);
    ctxp = &ctx;
    if (!action) throw std::invalid_argument("no command given");
    return action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
