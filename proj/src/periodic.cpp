#include "qmflab/periodic.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace qmflab {

namespace {

long fold(long r, long M) { return std::min(r, M - r); }

}  // namespace

PeriodicCoeffs make_periodic(long M, std::vector<GaussRat> values, long k0, Parity parity) {
  if (M < 2) throw std::invalid_argument("period must be at least 2");
  if (k0 < 1 || k0 >= 2 * M) throw std::invalid_argument("k0 must lie in [1, 2M)");
  if (static_cast<long>(values.size()) != M)
    throw std::invalid_argument("values must have length M");
  if (!values[0].is_zero()) throw std::invalid_argument("f(0) must vanish");
  if (parity == Parity::none) throw std::invalid_argument("parity must be stated");

  for (long r = 0; r < M; ++r) {
    long rr = (M - r) % M;
    const GaussRat& a = values[static_cast<std::size_t>(r)];
    const GaussRat& b = values[static_cast<std::size_t>(rr)];
    if (parity == Parity::even && !(a == b))
      throw std::invalid_argument("stated even parity does not hold");
    if (parity == Parity::odd && !(a == -b))
      throw std::invalid_argument("stated odd parity does not hold");
  }

  PeriodicCoeffs f;
  f.M = M;
  f.k0 = k0;
  f.parity = parity;
  f.values = std::move(values);

  // Support must fold into M_f(k0) = {1 <= k <= M/2 : k^2 = k0 mod 2M};
  // for odd M the unfolded residue M-k lands in a different square class
  // mod 2M, so the check always runs on the folded representative.
  for (long r = 1; r < M; ++r) {
    if (f.values[static_cast<std::size_t>(r)].is_zero()) continue;
    long k = fold(r, M);
    if ((k * k - k0) % (2 * M) != 0)
      throw std::invalid_argument("support escapes the residue class of k0");
    if (std::find(f.Mf.begin(), f.Mf.end(), k) == f.Mf.end()) f.Mf.push_back(k);
  }
  if (f.Mf.empty()) throw std::invalid_argument("support M_f(k0) is empty");
  std::sort(f.Mf.begin(), f.Mf.end());
  return f;
}

PeriodicCoeffs char_chi12() {
  std::vector<GaussRat> v(12);
  v[1] = GaussRat(1);
  v[11] = GaussRat(1);
  v[5] = GaussRat(-1);
  v[7] = GaussRat(-1);
  PeriodicCoeffs f = make_periodic(12, std::move(v), 1, Parity::even);
  f.label = "chi12";
  return f;
}

PeriodicCoeffs char_chi_t(int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  long M = 3L * (1L << (t + 1));
  long u = (1L << (t + 1)) - 3;  // 2^{t+1} - 3
  std::vector<GaussRat> v(static_cast<std::size_t>(M));
  v[static_cast<std::size_t>(u)] = GaussRat(1);
  v[static_cast<std::size_t>(M - u)] = GaussRat(1);
  v[static_cast<std::size_t>(u + 6)] = GaussRat(-1);  // 2^{t+1} + 3
  v[static_cast<std::size_t>(M - u - 6)] = GaussRat(-1);
  long k0 = (u * u) % (2 * M);
  PeriodicCoeffs f = make_periodic(M, std::move(v), k0, Parity::even);
  std::ostringstream os;
  os << "chi_t:" << t;
  f.label = os.str();
  return f;
}

PeriodicCoeffs char_hikami(int m, int el) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (el < 0 || el >= m) throw std::invalid_argument("el must lie in [0, m)");
  long M = 8L * m + 4;
  long u = 2L * m - 2 * el - 1;
  std::vector<GaussRat> v(static_cast<std::size_t>(M));
  v[static_cast<std::size_t>(u)] = GaussRat(1);
  v[static_cast<std::size_t>(M - u)] = GaussRat(1);
  v[static_cast<std::size_t>(2L * m + 2 * el + 3)] = GaussRat(-1);
  v[static_cast<std::size_t>(M - (2L * m + 2 * el + 3))] = GaussRat(-1);
  long k0 = (u * u) % (2 * M);
  PeriodicCoeffs f = make_periodic(M, std::move(v), k0, Parity::even);
  std::ostringstream os;
  os << "hikami:" << m << ":" << el;
  f.label = os.str();
  return f;
}

PeriodicCoeffs char_false_theta(long j, long M) {
  if (M < 2) throw std::invalid_argument("period must be at least 2");
  j %= M;
  if (j < 0) j += M;
  if (j == 0) throw std::invalid_argument("j must be nonzero mod M");
  if (2 * j == M) throw std::invalid_argument("j = M/2 has no odd extension");
  std::vector<GaussRat> v(static_cast<std::size_t>(M));
  v[static_cast<std::size_t>(j)] = GaussRat(1);
  v[static_cast<std::size_t>(M - j)] = GaussRat(-1);
  long k = fold(j, M);
  long k0 = (k * k) % (2 * M);
  // k^2 = 0 mod 2M (e.g. j = 6, M = 18) has no residue class in [1, 2M);
  // hand the out-of-range value to make_periodic so it rejects uniformly.
  if (k0 == 0) k0 = 2 * M;
  PeriodicCoeffs f = make_periodic(M, std::move(v), k0, Parity::odd);
  std::ostringstream os;
  os << "false:" << j << ":" << M;
  f.label = os.str();
  return f;
}

PeriodicCoeffs char_psi() {
  std::vector<GaussRat> v(2);
  v[1] = GaussRat(1);
  PeriodicCoeffs f = make_periodic(2, std::move(v), 1, Parity::even);
  f.label = "psi";
  return f;
}

PeriodicCoeffs build_by_name(const std::string& name) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    return parts;
  };
  auto parts = split(name);
  try {
    if (parts[0] == "chi12" && parts.size() == 1) return char_chi12();
    if (parts[0] == "psi" && parts.size() == 1) return char_psi();
    if (parts[0] == "chi_t" && parts.size() == 2) return char_chi_t(std::stoi(parts[1]));
    if (parts[0] == "hikami" && parts.size() == 3)
      return char_hikami(std::stoi(parts[1]), std::stoi(parts[2]));
    if (parts[0] == "false" && parts.size() == 3)
      return char_false_theta(std::stol(parts[1]), std::stol(parts[2]));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed builder name: " + name);
  }
  throw std::invalid_argument("unknown builder: " + name);
}

ParityParts decompose(const PeriodicCoeffs& f) {
  const long M = f.M;
  std::vector<GaussRat> ev(static_cast<std::size_t>(M)), od(static_cast<std::size_t>(M));
  Rat half(1);
  half /= 2;
  bool has_even = false, has_odd = false;
  for (long r = 0; r < M; ++r) {
    const GaussRat& a = f.values[static_cast<std::size_t>(r)];
    const GaussRat& b = f.values[static_cast<std::size_t>((M - r) % M)];
    GaussRat e{(a.re + b.re) * half, (a.im + b.im) * half};
    GaussRat o{(a.re - b.re) * half, (a.im - b.im) * half};
    if (!e.is_zero()) has_even = true;
    if (!o.is_zero()) has_odd = true;
    ev[static_cast<std::size_t>(r)] = e;
    od[static_cast<std::size_t>(r)] = o;
  }
  ParityParts out;
  if (has_even) {
    out.even = make_periodic(M, std::move(ev), f.k0, Parity::even);
    out.even->label = f.label + ":even";
  }
  if (has_odd) {
    out.odd = make_periodic(M, std::move(od), f.k0, Parity::odd);
    out.odd->label = f.label + ":odd";
  }
  return out;
}

GaussRat primed_sum(const PeriodicCoeffs& f) {
  GaussRat s;
  Rat half(1);
  half /= 2;
  for (long k : f.Mf) {
    GaussRat v = f.at(k);
    if (2 * k == f.M) {
      v.re *= half;
      v.im *= half;
    }
    s += v;
  }
  return s;
}

Cplx c_f_constant(const PeriodicCoeffs& f, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx.working_digits());
  if (!f.is_even()) throw std::invalid_argument("c_f is defined for even f");
  Real two_pi = 2 * mp_pi();
  Cplx s;
  for (long k : f.Mf) {
    Cplx v = to_cplx(f.at(k));
    Real w = cos(two_pi * k / f.M);
    if (2 * k == f.M) w /= 2;
    s += v * w;
  }
  return Real(2) * s;
}

PeriodicCoeffs coeffs_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("M") || !j.contains("k0") || !j.contains("parity") ||
      !j.contains("values"))
    throw std::invalid_argument("coefficient JSON needs M, k0, parity, values");
  long M = j["M"].get<long>();
  long k0 = j["k0"].get<long>();
  std::string par = j["parity"].get<std::string>();
  Parity p = par == "even" ? Parity::even : par == "odd" ? Parity::odd : Parity::none;
  std::vector<GaussRat> vals;
  for (const auto& e : j["values"]) {
    if (!e.is_array() || e.size() != 4)
      throw std::invalid_argument("each value must be [num_re, den_re, num_im, den_im]");
    long long nr = e[0].get<long long>(), dr = e[1].get<long long>();
    long long ni = e[2].get<long long>(), di = e[3].get<long long>();
    if (dr == 0 || di == 0) throw std::invalid_argument("zero denominator in values");
    vals.push_back(GaussRat{Rat(nr) / dr, Rat(ni) / di});
  }
  PeriodicCoeffs f = make_periodic(M, std::move(vals), k0, p);
  f.label = "custom";
  return f;
}

std::string coeffs_to_json(const PeriodicCoeffs& f) {
  nlohmann::ordered_json j;
  j["M"] = f.M;
  j["k0"] = f.k0;
  j["parity"] = f.is_even() ? "even" : "odd";
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (const auto& v : f.values) {
    nlohmann::ordered_json e = nlohmann::ordered_json::array();
    e.push_back(static_cast<long long>(numerator(v.re)));
    e.push_back(static_cast<long long>(denominator(v.re)));
    e.push_back(static_cast<long long>(numerator(v.im)));
    e.push_back(static_cast<long long>(denominator(v.im)));
    vals.push_back(e);
  }
  j["values"] = vals;
  return j.dump();
}

}  // namespace qmflab
