#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "denseknap/rational.hpp"

namespace denseknap {

// Knobs for one property check. Zero-valued size fields mean "use the
// check's documented default". Trial i derives its instances from seed + i,
// so a reported violation seed reruns as --seed <seed> --trials 1.
struct VerifyOptions {
  long long trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  int n_max = 0;
  int m = 0;                   // fixed order; 0 = per-check mix
  int m_max_identities = 20;   // identities check upper bound
  long long oracle_budget = 10'000'000;
};

struct VerifyReport {
  std::string check;
  std::string detail;  // sub-property, e.g. "dksh" / "sukp"
  long long trials = 0;
  long long violations = 0;
  std::string worst_ratio;  // exact fraction string; empty when not applicable
  std::vector<std::uint64_t> violation_seeds;
};

// check names: lemma22 | lemma23 | rounding4x | blowup | identities |
// feasibility. Unknown names throw std::invalid_argument. A check may emit
// more than one report row (feasibility covers both solver families).
std::vector<VerifyReport> run_check(const std::string& name, const VerifyOptions& opt);
std::vector<std::string> all_check_names();

std::string report_to_json(const VerifyReport& report);

}  // namespace denseknap
