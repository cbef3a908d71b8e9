#pragma once

#include <cstdint>

namespace finv {

/// Hard resource limits for the brute-force oracle. Exceeding one raises a
/// ResourceError naming the limit, so failures are deterministic.
struct Budget {
  std::uint64_t max_terms = 10'000'000;    // expansion terms / enumerated k
  std::uint64_t max_columns = 4'000;       // Macaulay matrix columns
  std::uint64_t max_states = 50'000'000;   // digit-DP table entries

  /// Defaults overridden by FINV_BUDGET_TERMS, FINV_BUDGET_COLUMNS and
  /// FINV_BUDGET_STATES when set.
  static Budget from_env();
};

}  // namespace finv
