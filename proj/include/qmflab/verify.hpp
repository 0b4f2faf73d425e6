#pragma once

#include "qmflab/modgroup.hpp"
#include "qmflab/periodic.hpp"
#include "qmflab/precision.hpp"

#include <string>
#include <vector>

namespace qmflab {

struct VerificationRecord {
  std::string suite;
  std::string name;    // stable per-check identifier within the suite
  std::string inputs;  // compact JSON echo of the arguments
  Cplx lhs, rhs;
  Real residual;
  Real tolerance;
  bool pass = false;
  long runtime_ms = 0;
};

// Serialization: one JSON object per record (JSON-lines) or a CSV row with
// complex fields flattened into re/im columns.  Key order is fixed, so
// identical runs are byte-identical apart from runtime_ms.
std::string record_to_json(const VerificationRecord& r, unsigned digits);
std::string record_to_csv(const VerificationRecord& r, unsigned digits);
std::string csv_header();

// The versioned defaults file (config/suite_defaults.json) as embedded at
// build time; suite runs and the acceptance harness read grids and
// tolerances from here so runs are reproducible from the repository alone.
const std::string& embedded_defaults();

struct SuiteConfig {
  PrecisionContext ctx;
  int jobs = 1;
  std::string defaults_json;  // parsed lazily by the suite runners
  Real tolerance_override = Real(-1);  // negative: use per-suite defaults
};

// Known names: transforms, qmf32, qmf12, strange, agreement, decay.
// Throws std::invalid_argument for unknown suites (CLI maps this to exit 2).
std::vector<VerificationRecord> run_suite(const std::string& name, const SuiteConfig& cfg);

// Pseudorandom Gamma_M elements for the transformation-law grid: entries
// bounded by `bound`, the first `neg_d` entries have d < 0, deterministic in
// the seed.  Log-uniform magnitudes exercise every scale up to the bound.
std::vector<MoebiusMap> sample_gamma_M(long M, int count, long long bound, int neg_d,
                                       unsigned long long seed);

// Input literals shared by the suite runners and the CLI: "a+bi" complex
// strings (Real-precision mantissas) and "p/q" rationals.
Cplx parse_complex(const std::string& s);
std::pair<long long, long long> parse_rational(const std::string& s);

}  // namespace qmflab
