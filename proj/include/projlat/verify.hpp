#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projlat/types.hpp"

namespace projlat::verify {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int count = 100;
  int max_dim = 12;
  ToleranceConfig cfg;
};

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  bool passed = false;
  double max_discrepancy = 0.0;
  // First failing instance, serialized with the violated property named,
  // empty when the suite passed.
  std::string counterexample;
  std::string detail;
};

SuiteResult suite_spectral_families(const VerifyOptions& opt);
SuiteResult suite_meet_oracle(const VerifyOptions& opt);
SuiteResult suite_lattice_laws(const VerifyOptions& opt);
SuiteResult suite_spectrum_identities(const VerifyOptions& opt);
SuiteResult suite_glb_norm(const VerifyOptions& opt);
SuiteResult suite_separativity(const VerifyOptions& opt);
SuiteResult suite_equalizers(const VerifyOptions& opt);
SuiteResult suite_ee_inequality(const VerifyOptions& opt);
SuiteResult suite_gap(const VerifyOptions& opt);
SuiteResult suite_pullback(const VerifyOptions& opt);
SuiteResult suite_pushforward(const VerifyOptions& opt);
SuiteResult suite_calkin(const VerifyOptions& opt);

// Every suite above, fixed order, one result each.
std::vector<SuiteResult> run_all(const VerifyOptions& opt);

}  // namespace projlat::verify
