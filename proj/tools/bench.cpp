// Benchmark: OpenMP theta kernel against the serial reference, plus the
// Poisson dual sum that the routed evaluator switches to near the real line.
// Timings are wall clock; the diff column doubles as a consistency check.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qmflab/periodic.hpp"
#include "qmflab/precision.hpp"
#include "qmflab/theta.hpp"

namespace {

using namespace qmflab;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <typename Fn>
std::pair<double, Cplx> timed(Fn&& fn, int reps) {
  Cplx v;
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) v = fn();
  return {ms_since(t0) / reps, v};
}

}  // namespace

int main(int argc, char** argv) {
  unsigned digits = 60;
  int reps = 3;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--digits" && i + 1 < argc)
      digits = static_cast<unsigned>(std::stoul(argv[++i]));
    else if (a == "--reps" && i + 1 < argc)
      reps = std::stoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: qmflab_bench [--digits D] [--reps R]\n");
      return 2;
    }
  }

  PrecisionContext ctx = PrecisionContext::make(digits);
  ScopedPrecision guard(ctx.working_digits());

#ifdef _OPENMP
  std::printf("threads: %d, digits: %u, reps: %d\n", omp_get_max_threads(), digits, reps);
#else
  std::printf("threads: 1 (no OpenMP), digits: %u, reps: %d\n", digits, reps);
#endif

  std::printf("%-10s %-8s %12s %12s %8s %10s\n", "builder", "y", "serial_ms", "kernel_ms",
              "speedup", "|diff|");

  const std::vector<std::string> names = {"chi12", "false:3:8"};
  const std::vector<double> ys = {1e-4, 1e-6, 1e-8};
  bool consistent = true;
  // Reduction order may differ between the two implementations, so allow
  // rounding noise well below the requested precision.
  Real thr = Real("1e-" + std::to_string(digits > 20 ? digits - 10 : 10));

  for (const auto& name : names) {
    PeriodicCoeffs f = build_by_name(name);
    for (double y : ys) {
      Cplx z{Real("0.1"), Real(y)};
      auto [t_ser, v_ser] = timed([&] { return theta_f_direct_serial(f, z, ctx); }, reps);
      auto [t_par, v_par] = timed([&] { return theta_f_direct(f, z, ctx); }, reps);
      Real diff = cabs(v_ser - v_par);
      consistent = consistent && diff <= thr;
      std::printf("%-10s %-8.0e %12.2f %12.2f %8.2f %10s\n", name.c_str(), y, t_ser, t_par,
                  t_par > 0 ? t_ser / t_par : 0.0, diff.str(3, std::ios_base::scientific).c_str());
    }
  }

  // Dual sum vs direct sum at small height: the crossover that motivates the
  // routing threshold in theta_f.
  {
    PeriodicCoeffs f = build_by_name("chi12");
    std::printf("\n%-10s %-8s %12s %12s %10s\n", "builder", "y", "direct_ms", "dual_ms", "|diff|");
    for (double y : {1e-3, 1e-4, 1e-5}) {
      Cplx z{Real("0.0"), Real(y)};
      auto [t_dir, v_dir] = timed([&] { return theta_f_direct(f, z, ctx); }, reps);
      auto [t_dual, v_dual] = timed([&] { return theta_dual_sum(f, z, ctx); }, reps);
      Real diff = cabs(v_dir - v_dual);
      std::printf("%-10s %-8.0e %12.2f %12.2f %10s\n", "chi12", y, t_dir, t_dual,
                  diff.str(3, std::ios_base::scientific).c_str());
    }
  }

  if (!consistent) {
    std::printf("\nserial and kernel evaluations disagree\n");
    return 1;
  }
  return 0;
}
