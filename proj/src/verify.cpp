#include "qmflab/verify.hpp"

#include "qmflab/lvalues.hpp"
#include "qmflab/qknots.hpp"
#include "qmflab/qmf.hpp"
#include "qmflab/theta.hpp"

#include "json.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qmflab {

namespace detail {
extern const char kSuiteDefaultsJson[];
}

const std::string& embedded_defaults() {
  static const std::string s = detail::kSuiteDefaultsJson;
  return s;
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string real_str(const Real& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

MoebiusMap parse_gamma(const std::string& s) {
  std::istringstream is(s);
  MoebiusMap g;
  if (!(is >> g.a >> g.b >> g.c >> g.d)) throw std::invalid_argument("bad gamma: " + s);
  if (g.det() != 1) throw std::invalid_argument("gamma is not unimodular: " + s);
  return g;
}

RationalCusp parse_cusp(const std::string& s) {
  auto [p, q] = parse_rational(s);
  return RationalCusp::make(p, q);
}

// One check: eval() produces lhs/rhs and optionally its own residual
// (negative means "use |lhs - rhs|").
struct EvalOut {
  Cplx lhs, rhs;
  Real residual = Real(-1);
};

struct Task {
  std::string name;
  ordered_json inputs;
  Real tolerance;
  std::function<EvalOut()> eval;
};

std::vector<VerificationRecord> run_tasks(const std::string& suite, const std::vector<Task>& tasks,
                                          const SuiteConfig& cfg) {
  std::vector<VerificationRecord> recs(tasks.size());
  const unsigned wd = cfg.ctx.working_digits();
  const bool par = cfg.jobs > 1;
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs) if (par)
  for (long i = 0; i < static_cast<long>(tasks.size()); ++i) {
    assert_thread_precision(wd);
    const Task& t = tasks[i];
    VerificationRecord r;
    r.suite = suite;
    r.name = t.name;
    ordered_json in = t.inputs;
    r.tolerance = cfg.tolerance_override >= 0 ? cfg.tolerance_override : t.tolerance;
    auto t0 = std::chrono::steady_clock::now();
    try {
      EvalOut out = t.eval();
      r.lhs = out.lhs;
      r.rhs = out.rhs;
      r.residual = out.residual < 0 ? cabs(out.lhs - out.rhs) : out.residual;
      r.pass = r.residual <= r.tolerance;
    } catch (const std::exception& e) {
      in["error"] = e.what();
      r.residual = Real("1e400");
      r.pass = false;
    }
    auto t1 = std::chrono::steady_clock::now();
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    r.inputs = in.dump();
    recs[static_cast<std::size_t>(i)] = std::move(r);
  }
  return recs;
}

ordered_json suite_section(const SuiteConfig& cfg, const std::string& suite) {
  const std::string& text = cfg.defaults_json.empty() ? embedded_defaults() : cfg.defaults_json;
  ordered_json doc = ordered_json::parse(text);
  if (!doc.contains("suites") || !doc["suites"].contains(suite))
    throw std::invalid_argument("defaults file has no suite section: " + suite);
  return doc["suites"][suite];
}

ordered_json full_doc(const SuiteConfig& cfg) {
  const std::string& text = cfg.defaults_json.empty() ? embedded_defaults() : cfg.defaults_json;
  return ordered_json::parse(text);
}

Real tol_of(const ordered_json& s, const char* key) {
  return Real(s.at(key).get<std::string>());
}

// ---- suite: transforms --------------------------------------------------

std::vector<VerificationRecord> suite_transforms(const SuiteConfig& cfg) {
  ScopedPrecision guard(cfg.ctx.working_digits());
  ordered_json s = suite_section(cfg, "transforms");
  const Real tol = tol_of(s, "tolerance");
  const Real ptol = tol_of(s, "product_tolerance");
  const PrecisionContext ctx = cfg.ctx;

  std::vector<Task> tasks;
  for (const auto& bn : s["builders"]) {
    const std::string name = bn.get<std::string>();
    PeriodicCoeffs f = build_by_name(name);
    auto gammas = sample_gamma_M(f.M, s["gamma_count"].get<int>(),
                                 s["entry_bound"].get<long long>(),
                                 s["min_negative_d"].get<int>(),
                                 s["seed"].get<unsigned long long>());
    const bool even = f.is_even();
    int gi = 0;
    for (const MoebiusMap& g : gammas) {
      int zi = 0;
      for (const auto& zs : s["points"]) {
        Cplx z = parse_complex(zs.get<std::string>());
        Task t;
        t.name = name + "/gamma" + std::to_string(gi) + "/z" + std::to_string(zi);
        t.inputs = {{"builder", name}, {"gamma", g.str()}, {"z", zs.get<std::string>()}};
        t.tolerance = tol;
        t.eval = [f, g, z, ctx, even]() -> EvalOut {
          Cplx d = even ? transform_residual_theta(f, g, z, ctx)
                        : transform_residual_Theta(f, g, z, ctx);
          return {d, Cplx{Real(0), Real(0)}, Real(-1)};
        };
        tasks.push_back(std::move(t));
        ++zi;
      }
      ++gi;
    }
  }
  for (const auto& bn : s["product_builders"]) {
    const std::string name = bn.get<std::string>();
    PeriodicCoeffs f = build_by_name(name);
    int zi = 0;
    for (const auto& zs : s["product_points"]) {
      Cplx z = parse_complex(zs.get<std::string>());
      Task t;
      t.name = "product/" + name + "/z" + std::to_string(zi);
      t.inputs = {{"builder", name}, {"z", zs.get<std::string>()}};
      t.tolerance = ptol;
      t.eval = [f, z, ctx]() -> EvalOut {
        return {theta_f_direct(f, z, ctx), product_form(f, z, ctx), Real(-1)};
      };
      tasks.push_back(std::move(t));
      ++zi;
    }
  }
  return run_tasks("transforms", tasks, cfg);
}

// ---- suite: decay -------------------------------------------------------

std::vector<VerificationRecord> suite_decay(const SuiteConfig& cfg) {
  ScopedPrecision guard(cfg.ctx.working_digits());
  ordered_json s = suite_section(cfg, "decay");
  const PrecisionContext ctx = cfg.ctx;
  PeriodicCoeffs f = build_by_name(s["builder"].get<std::string>());
  RationalCusp alpha = parse_cusp(s["alpha"].get<std::string>());
  const std::string ystr = s["y"].get<std::string>();
  const std::string ay = s["agreement_y"].get<std::string>();

  std::vector<Task> tasks;
  {
    Task t;
    t.name = "constant/" + f.label;
    t.inputs = {{"builder", f.label}, {"alpha", s["alpha"].get<std::string>()}, {"y", ystr}};
    t.tolerance = tol_of(s, "tolerance");
    t.eval = [f, alpha, ystr, ctx]() -> EvalOut {
      Real y(ystr);
      Real x = alpha.is_infinity() ? Real(0) : alpha.value().convert_to<Real>();
      Cplx v = theta_f_direct(f, Cplx{x, y}, ctx);
      long k1 = f.Mf.front();
      Real amp = sqrt(Real(f.M) * y) * exp(mp_pi() * k1 * k1 / (Real(f.M) * y));
      return {amp * v, c_f_constant(f, ctx), Real(-1)};
    };
    tasks.push_back(std::move(t));
  }
  {
    Task t;
    t.name = "dual-agreement/" + f.label;
    t.inputs = {{"builder", f.label}, {"alpha", s["alpha"].get<std::string>()}, {"y", ay}};
    t.tolerance = tol_of(s, "agreement_tolerance");
    t.eval = [f, alpha, ay, ctx]() -> EvalOut {
      DecayCheck dc = decay_at_rational(f, alpha, Real(ay), ctx);
      return {dc.direct, dc.dual, Real(-1)};
    };
    tasks.push_back(std::move(t));
  }
  return run_tasks("decay", tasks, cfg);
}

// ---- suite: agreement ---------------------------------------------------

std::vector<VerificationRecord> suite_agreement(const SuiteConfig& cfg) {
  ScopedPrecision guard(cfg.ctx.working_digits());
  ordered_json doc = full_doc(cfg);
  ordered_json s = doc["suites"]["agreement"];
  const PrecisionContext ctx = cfg.ctx;
  std::vector<Task> tasks;

  // Exact rational L-value anchor.
  {
    Task t;
    t.name = "exact-L/chi12";
    t.inputs = {{"builder", "chi12"}, {"n", 1}, {"expected", "-2"}};
    t.tolerance = Real(0);
    t.eval = [ctx]() -> EvalOut {
      PeriodicFunction C = build_C(char_chi12(), RationalCusp::make(0, 1));
      ExactLValue L = l_at_negative_int(C, 1, ctx);
      bool ok = L.is_gauss_rational && L.rational_value.re == Rat(-2) && L.rational_value.im == 0;
      return {L.value, Cplx{Real(-2), Real(0)}, ok ? Real(0) : Real(1)};
    };
    tasks.push_back(std::move(t));
  }

  // Parity vanishing of L(-n, C): even C kills even n, odd C kills odd n,
  // exactly in the cyclotomic ring.  psi has nonzero mean at 0, so its grid
  // point is the Gamma_1(4)-cusp 1/4 where the twisted mean vanishes.
  for (const auto& bn : doc["suites"]["transforms"]["builders"]) {
    const std::string name = bn.get<std::string>();
    PeriodicCoeffs f = build_by_name(name);
    RationalCusp alpha = (name == "psi") ? RationalCusp::make(1, 4) : RationalCusp::make(0, 1);
    std::vector<unsigned> ns = f.is_even() ? std::vector<unsigned>{0, 2, 4, 6}
                                           : std::vector<unsigned>{1, 3, 5};
    for (unsigned n : ns) {
      Task t;
      t.name = "parity/" + name + "/n" + std::to_string(n);
      t.inputs = {{"builder", name}, {"alpha", alpha.str()}, {"n", n}};
      t.tolerance = Real(0);
      t.eval = [f, alpha, n, ctx]() -> EvalOut {
        PeriodicFunction C = build_C(f, alpha);
        ExactLValue L = l_at_negative_int(C, n, ctx);
        bool zero = true;
        for (const auto& c : L.cyclo_coeffs) zero = zero && c.is_zero();
        return {L.value, Cplx{Real(0), Real(0)}, zero ? Real(0) : Real(1)};
      };
      tasks.push_back(std::move(t));
    }
  }

  // Both-sided asymptotic fits against the exact L-value expansion.
  const Real ftol = tol_of(s, "tolerance");
  const int R = s["R"].get<int>();
  for (const auto& bn : s["builders"]) {
    const std::string name = bn.get<std::string>();
    PeriodicCoeffs f = build_by_name(name);
    for (const auto& as : s["alphas"]) {
      RationalCusp alpha = parse_cusp(as.get<std::string>());
      Task t;
      t.name = "fit/" + name + "/" + as.get<std::string>();
      t.inputs = {{"builder", name}, {"alpha", as.get<std::string>()}, {"R", R}};
      t.tolerance = ftol;
      t.eval = [f, alpha, R, ctx]() -> EvalOut {
        AgreementReport rep = infinite_order_agreement(f, alpha, R, ctx);
        return {rep.theta_fit.back(), rep.theta_series.coeffs.back(), rep.max_dev};
      };
      tasks.push_back(std::move(t));
    }
  }
  return run_tasks("agreement", tasks, cfg);
}

// ---- suite: qmf32 -------------------------------------------------------

std::vector<VerificationRecord> suite_qmf32(const SuiteConfig& cfg) {
  ScopedPrecision guard(cfg.ctx.working_digits());
  ordered_json s = suite_section(cfg, "qmf32");
  const PrecisionContext ctx = cfg.ctx;
  const Real tol = tol_of(s, "tolerance");
  const Real itol = tol_of(s, "interior_tolerance");
  const Real ctol = tol_of(s, "connect_tolerance");
  std::vector<Task> tasks;

  for (const auto& bn : s["builders"]) {
    const std::string name = bn.get<std::string>();
    PeriodicCoeffs f = build_by_name(name);
    int gi = 0;
    for (const auto& gs : s["gammas"][name]) {
      MoebiusMap g = parse_gamma(gs.get<std::string>());
      int ai = 0;
      for (const auto& as : s["alphas"][name]) {
        RationalCusp alpha = parse_cusp(as.get<std::string>());
        Task t;
        t.name = "qmf32/" + name + "/g" + std::to_string(gi) + "/a" + std::to_string(ai);
        t.inputs = {{"builder", name}, {"gamma", g.str()}, {"alpha", as.get<std::string>()}};
        t.tolerance = tol;
        t.eval = [f, g, alpha, ctx]() -> EvalOut {
          QmfResidual r = qmf_residual_32(f, g, alpha, ctx);
          return {r.value_at_alpha, r.value_at_alpha - r.residual, r.abs_residual};
        };
        tasks.push_back(std::move(t));
        ++ai;
      }
      ++gi;
    }
    int zi = 0;
    for (const auto& zs : s["interior_points"]) {
      Cplx z = parse_complex(zs.get<std::string>());
      Task t;
      t.name = "eichler-xrep/" + name + "/z" + std::to_string(zi);
      t.inputs = {{"builder", name}, {"z", zs.get<std::string>()}};
      t.tolerance = itol;
      t.eval = [f, z, ctx]() -> EvalOut {
        return {eichler_tilde(f, z, ctx, EichlerRoute::series),
                eichler_tilde(f, z, ctx, EichlerRoute::quadrature), Real(-1)};
      };
      tasks.push_back(std::move(t));
      ++zi;
    }
    int ai = 0;
    for (const auto& as : s["alphas"][name]) {
      RationalCusp alpha = parse_cusp(as.get<std::string>());
      Task t;
      t.name = "connect/" + name + "/a" + std::to_string(ai);
      t.inputs = {{"builder", name}, {"alpha", as.get<std::string>()}};
      t.tolerance = ctol;
      t.eval = [f, alpha, ctx]() -> EvalOut {
        return {theta_value_at_cusp(f, alpha, ctx), radial_value(f, 3, alpha, ctx), Real(-1)};
      };
      tasks.push_back(std::move(t));
      ++ai;
    }
  }
  return run_tasks("qmf32", tasks, cfg);
}

// ---- suite: qmf12 -------------------------------------------------------

std::vector<VerificationRecord> suite_qmf12(const SuiteConfig& cfg) {
  ScopedPrecision guard(cfg.ctx.working_digits());
  ordered_json s = suite_section(cfg, "qmf12");
  const PrecisionContext ctx = cfg.ctx;
  const Real tol = tol_of(s, "tolerance");
  std::vector<Task> tasks;

  for (const auto& bn : s["builders"]) {
    const std::string name = bn.get<std::string>();
    PeriodicCoeffs f = build_by_name(name);
    int gi = 0;
    for (const auto& gs : s["gammas"][name]) {
      MoebiusMap g = parse_gamma(gs.get<std::string>());
      int ti = 0;
      for (const auto& ts : s["taus"]) {
        Cplx tau = parse_complex(ts.get<std::string>());
        Task t;
        t.name = "qmf12/" + name + "/g" + std::to_string(gi) + "/tau" + std::to_string(ti);
        t.inputs = {{"builder", name}, {"gamma", g.str()}, {"tau", ts.get<std::string>()}};
        t.tolerance = tol;
        t.eval = [f, g, tau, ctx]() -> EvalOut {
          QmfResidual r = qmf_residual_12(f, g, tau, ctx);
          return {r.value_at_alpha, r.value_at_alpha - r.residual, r.abs_residual};
        };
        tasks.push_back(std::move(t));
        ++ti;
      }
      int ci = 0;
      for (const auto& cs : s["cusps"][name]) {
        RationalCusp alpha = parse_cusp(cs.get<std::string>());
        Task t;
        t.name = "qmf12/" + name + "/g" + std::to_string(gi) + "/cusp" + std::to_string(ci);
        t.inputs = {{"builder", name}, {"gamma", g.str()}, {"alpha", cs.get<std::string>()}};
        t.tolerance = tol;
        t.eval = [f, g, alpha, ctx]() -> EvalOut {
          QmfResidual r = qmf_residual_12_at_cusp(f, g, alpha, ctx);
          return {r.value_at_alpha, r.value_at_alpha - r.residual, r.abs_residual};
        };
        tasks.push_back(std::move(t));
        ++ci;
      }
      ++gi;
    }
    int ci = 0;
    for (const auto& cs : s["cusps"][name]) {
      RationalCusp alpha = parse_cusp(cs.get<std::string>());
      Task t;
      t.name = "theta-eq-hat/" + name + "/cusp" + std::to_string(ci);
      t.inputs = {{"builder", name}, {"alpha", cs.get<std::string>()}};
      t.tolerance = tol;
      t.eval = [f, alpha, ctx]() -> EvalOut {
        return {radial_value(f, 1, alpha, ctx), hat_Theta_at_cusp(f, alpha, ctx), Real(-1)};
      };
      tasks.push_back(std::move(t));
      ++ci;
    }
  }
  return run_tasks("qmf12", tasks, cfg);
}

// ---- suite: strange -----------------------------------------------------

std::vector<VerificationRecord> suite_strange(const SuiteConfig& cfg) {
  ScopedPrecision guard(cfg.ctx.working_digits());
  ordered_json s = suite_section(cfg, "strange");
  const PrecisionContext ctx = cfg.ctx;
  const Real tol = tol_of(s, "tolerance");
  const Real utol = tol_of(s, "unimodal_tolerance");
  std::vector<Task> tasks;

  auto add_strange = [&](const std::string& side, const std::string& as) {
    auto [p, q] = parse_rational(as);
    RootOfUnity alpha = RootOfUnity::make(p, q);
    Task t;
    t.name = side + "@" + as;
    t.inputs = {{"side", side}, {"alpha", as}};
    t.tolerance = tol;
    t.eval = [side, alpha, ctx]() -> EvalOut {
      StrangeCheck sc = strange_check(side, alpha, ctx);
      return {sc.lhs, sc.rhs, Real(-1)};
    };
    tasks.push_back(std::move(t));
  };

  for (const auto& as : s["F_alphas"]) add_strange("F", as.get<std::string>());
  for (const auto& tv : s["Ft"]["ts"])
    for (const auto& as : s["Ft"]["alphas"])
      add_strange("Ft:" + std::to_string(tv.get<int>()), as.get<std::string>());
  for (const auto& ml : s["X"]["ml"])
    for (const auto& as : s["X"]["alphas"])
      add_strange("X:" + std::to_string(ml[0].get<int>()) + ":" + std::to_string(ml[1].get<int>()),
                  as.get<std::string>());

  {
    const int count = s["unimodal_exponents"].get<int>();
    Task t;
    t.name = "unimodal/coeffs";
    t.inputs = {{"exponents", count}};
    t.tolerance = Real(0);
    t.eval = [count]() -> EvalOut {
      auto lhs = unimodal_lhs_coeffs(count);
      auto rhs = unimodal_rhs_coeffs(count);
      bool ok = lhs.size() == rhs.size();
      for (std::size_t i = 0; ok && i < lhs.size(); ++i)
        ok = lhs[i].first == rhs[i].first && lhs[i].second == rhs[i].second;
      return {Cplx{Real(static_cast<long>(lhs.size())), Real(0)},
              Cplx{Real(static_cast<long>(rhs.size())), Real(0)}, ok ? Real(0) : Real(1)};
    };
    tasks.push_back(std::move(t));
  }
  {
    const std::string qs = s["unimodal_q"].get<std::string>();
    Task t;
    t.name = "unimodal/numeric";
    t.inputs = {{"q", qs}};
    t.tolerance = utol;
    t.eval = [qs, ctx]() -> EvalOut {
      Cplx q = (qs == "exp(-1)") ? Cplx{exp(Real(-1)), Real(0)} : parse_complex(qs);
      UnimodalCheck uc = unimodal_closed(q, ctx);
      return {uc.lhs, uc.rhs, Real(-1)};
    };
    tasks.push_back(std::move(t));
  }
  return run_tasks("strange", tasks, cfg);
}

}  // namespace

Cplx parse_complex(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty complex literal");
  if (t.back() != 'i') return Cplx{Real(t), Real(0)};
  t.pop_back();
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return Cplx{Real(0), Real(t.empty() ? "1" : t)};
  std::string re = t.substr(0, split);
  std::string im = t.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return Cplx{Real(re), Real(im)};
}

std::pair<long long, long long> parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return {std::stoll(s), 1};
    return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational: " + s);
  }
}

std::string record_to_json(const VerificationRecord& r, unsigned digits) {
  ordered_json j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["inputs"] = ordered_json::parse(r.inputs.empty() ? "{}" : r.inputs);
  j["lhs_re"] = real_str(r.lhs.re, digits);
  j["lhs_im"] = real_str(r.lhs.im, digits);
  j["rhs_re"] = real_str(r.rhs.re, digits);
  j["rhs_im"] = real_str(r.rhs.im, digits);
  j["residual"] = real_str(r.residual, digits);
  j["tolerance"] = real_str(r.tolerance, digits);
  j["pass"] = r.pass;
  j["runtime_ms"] = r.runtime_ms;
  return j.dump();
}

std::string csv_header() {
  return "suite,name,inputs,lhs_re,lhs_im,rhs_re,rhs_im,residual,tolerance,pass,runtime_ms";
}

std::string record_to_csv(const VerificationRecord& r, unsigned digits) {
  std::ostringstream os;
  os << csv_quote(r.suite) << ',' << csv_quote(r.name) << ',' << csv_quote(r.inputs) << ','
     << real_str(r.lhs.re, digits) << ',' << real_str(r.lhs.im, digits) << ','
     << real_str(r.rhs.re, digits) << ',' << real_str(r.rhs.im, digits) << ','
     << real_str(r.residual, digits) << ',' << real_str(r.tolerance, digits) << ','
     << (r.pass ? "true" : "false") << ',' << r.runtime_ms;
  return os.str();
}

std::vector<MoebiusMap> sample_gamma_M(long M, int count, long long bound, int neg_d,
                                       unsigned long long seed) {
  if (M < 2 || count < 0 || bound < 4 * M) throw std::invalid_argument("sample_gamma_M: bad arguments");
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(M));
  const long long twoM = 2LL * M;
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  // log-uniform integer in [1, hi]
  auto logu = [&](long long hi) -> long long {
    if (hi <= 1) return 1;
    double v = std::exp(unit() * std::log(static_cast<double>(hi)));
    long long r = static_cast<long long>(v);
    if (r < 1) r = 1;
    if (r > hi) r = hi;
    return r;
  };

  std::vector<MoebiusMap> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const bool want_neg = i < neg_d;
    MoebiusMap g;
    for (;;) {
      long long r = logu(std::max<long long>(1, bound / twoM));
      long long c = twoM * r;
      long long kmax = std::max<long long>(1, (bound - 1) / twoM);
      long long d;
      if (want_neg) {
        d = 1 - twoM * logu(kmax);
      } else {
        long long k = logu(kmax) - (rng() % 2 ? 1 : 0);  // admit d = 1
        d = 1 + twoM * k;
      }
      if (std::gcd(c, d < 0 ? -d : d) != 1) continue;
      // Extended gcd on (c, d): u c + v d = 1, then a = v, b = -u gives
      // a d - b c = 1.  Slide a by multiples of c to the smallest entry that
      // keeps b even when M is odd.
      long long u0 = 1, u1 = 0, v0 = 0, v1 = 1, r0 = c, r1 = d;
      while (r1 != 0) {
        long long qq = r0 / r1;
        long long r2 = r0 - qq * r1, u2 = u0 - qq * u1, v2 = v0 - qq * v1;
        r0 = r1; r1 = r2; u0 = u1; u1 = u2; v0 = v1; v1 = v2;
      }
      if (r0 == -1) { u0 = -u0; v0 = -v0; r0 = 1; }
      if (r0 != 1) continue;
      long long a = v0, b = -u0;
      // minimize |a| over a += t c (b += t d), honoring b parity for odd M
      long long shift = (a >= 0 ? a + c / 2 : a - c / 2) / c;
      a -= shift * c;
      b -= shift * d;
      auto b_ok = [&](long long bb) { return M % 2 == 0 || bb % 2 == 0; };
      if (!b_ok(b)) {
        // d is odd, so one step flips b's parity; pick the smaller |a|
        long long ap = a + c, bp = b + d, am = a - c, bm = b - d;
        if (b_ok(bp) && (!b_ok(bm) || std::llabs(ap) <= std::llabs(am))) { a = ap; b = bp; }
        else { a = am; b = bm; }
      }
      g = MoebiusMap{a, b, c, d};
      if (g.det() != 1) continue;
      if (g.max_entry() > bound) continue;
      if ((g.c % twoM) != 0) continue;
      if (((g.d % twoM) + twoM) % twoM != 1) continue;
      if (M % 2 == 1 && ((g.b % 2) + 2) % 2 != 0) continue;
      break;
    }
    out.push_back(g);
  }
  return out;
}

std::vector<VerificationRecord> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "transforms") return suite_transforms(cfg);
  if (name == "decay") return suite_decay(cfg);
  if (name == "agreement") return suite_agreement(cfg);
  if (name == "qmf32") return suite_qmf32(cfg);
  if (name == "qmf12") return suite_qmf12(cfg);
  if (name == "strange") return suite_strange(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace qmflab
