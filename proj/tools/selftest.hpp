#pragma once

#include <cstdint>
#include <string>

namespace fermifold::cli {

struct SelftestOptions {
  bool quick = false;
  std::uint64_t seed = 1;
};

struct SelftestOutcome {
  std::string report;
  bool all_passed = true;
};

/// Invariant suite at desk scale: K <= 10 Fock and D <= 6 geometry, or K <= 6 and D <= 4 when quick.
/// The report depends only on the options.
SelftestOutcome run_selftest(const SelftestOptions& options);

}  // namespace fermifold::cli
