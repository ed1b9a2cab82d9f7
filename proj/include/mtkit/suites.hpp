#pragma once

#include "mtkit/refine.hpp"
#include "mtkit/report.hpp"
#include "mtkit/serialize.hpp"

namespace mtkit {

struct RunConfig {
  uint64_t p = 5;
  uint32_t prec = 8;  // precision exponent N
  uint32_t cap_a = 2, cap_b = 2;
  std::vector<uint64_t> delta = {2};
  uint64_t seed = 1;
  std::vector<std::string> suites;  // empty = every suite; the literal
                                    // "none" selects nothing
  bool timings = false;

  Json to_json() const;
};

struct ScalarComparison {
  bool proportional = false;
  PadicInt ratio;  // meaningful when proportional
  bool unit = false;
};

/// If l1 = c * l2 for a scalar c mod p^N, returns c and whether it is a
/// unit; throws IndeterminateWhenBothZero when both vanish.
ScalarComparison compare_scalars(const GroupRingElement& l1, const GroupRingElement& l2);

struct ConjectureResult {
  bool membership = false;
  bool generates = false;
};

/// Weak check: theta in Fitt(M); strong check: (theta) = Fitt(M).
ConjectureResult conjecture_check(const GroupRingElement& theta, const PresentedModule& m);

/// One end-to-end chain replay for a single seed: synthetic principal ideal
/// at the truncated top level, unit-ratio swap, quotient projection at every
/// level with n+m >= 1, theta-ideal swap, final equality.
VerificationReport theorem71_harness(const RunConfig& cfg);

std::vector<std::string> suite_names();

/// Runs the selected suites with fixed derived seeds; failures are data in
/// the report, never exceptions.
VerificationReport run_suites(const RunConfig& cfg);

}  // namespace mtkit
