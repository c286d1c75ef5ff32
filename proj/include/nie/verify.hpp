#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nie/pir.hpp"

namespace nie {

/// Tuning for the property-verification sweeps.
struct VerifyConfig {
  /// units | torsion | representation | distance | duality | crt | optimal
  /// | all
  std::string suite = "all";
  /// Coefficient rings larger than this are skipped.
  std::size_t max_ring_size = 512;
  /// Quotient algebras larger than this are skipped; full ideal-lattice
  /// enumeration is attempted only up to 512 elements, sampled above that.
  std::size_t max_algebra_size = 4096;
  /// Seed for the sampled generator pairs on large algebras.
  std::uint64_t seed = 0;
};

/// One verified identity: how many instances were checked and which failed.
struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Minimal reproducers for the first few failures.
  std::vector<std::string> reproducers;

  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;  // sorted by name

  bool all_passed() const;
  std::size_t total_cases() const;
};

/// Runs the configured suites and reports per-identity pass/fail counts.
VerifyReport run_verify(const VerifyConfig& cfg);

/// True when `suite` names a known suite (including "all").
bool known_suite(const std::string& suite);

}  // namespace nie
