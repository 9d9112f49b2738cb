#pragma once

// Acceptance matrix: every published threshold and structural property the
// library must reproduce, runnable from the CLI and from ctest.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace steerdet {

struct CheckResult {
  std::string id;  // "1a", "5c", ...
  std::string description;
  bool pass = false;
  std::optional<double> measured;
  std::optional<double> expected;
  std::optional<double> tolerance;
  std::string detail;

  std::optional<double> delta() const {
    if (measured && expected) return std::abs(*measured - *expected);
    return std::nullopt;
  }
};

struct SelftestOptions {
  std::uint64_t seed = 42;
  /// Replaces every threshold tolerance when set.
  std::optional<double> threshold_tol;
  /// Region-scan worker count (0 = hardware concurrency).
  unsigned threads = 0;
};

inline const std::vector<std::uint64_t> kPropertySeeds = {42, 7, 1234};

std::vector<CheckResult> run_acceptance(const SelftestOptions& opts);

/// One line per check, then a summary. Returns true when every check passed.
bool print_results(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace steerdet
