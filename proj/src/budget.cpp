#include "finv/budget.hpp"

#include <cstdlib>
#include <string>

#include "finv/errors.hpp"

namespace finv {

namespace {

void override_from(const char* name, std::uint64_t& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used);
    if (used != std::string(raw).size() || value == 0) throw std::invalid_argument(name);
    slot = value;
  } catch (const std::exception&) {
    throw ArgumentError(std::string(name) + " must be a positive integer, got '" + raw + "'");
  }
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  override_from("FINV_BUDGET_TERMS", b.max_terms);
  override_from("FINV_BUDGET_COLUMNS", b.max_columns);
  override_from("FINV_BUDGET_STATES", b.max_states);
  return b;
}

}  // namespace finv
