#pragma once

// Command-line front end: request/report model, dispatch and rendering.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "finv/budget.hpp"
#include "finv/rational.hpp"

namespace finv::cli {

inline constexpr const char* kToolName = "finv";
inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Json, Csv, Text };

struct Request {
  std::string command;  // fpt | fermat-fpt | test-ideal | jumping | nu | verify | sweep | jump-scan
  std::vector<std::uint64_t> exponents;
  std::vector<std::uint64_t> coefficients;
  std::optional<std::uint64_t> degree;
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> prime_from;
  std::optional<std::uint64_t> prime_to;
  std::optional<Rational> lambda;
  std::uint64_t e = 1;
  std::uint64_t e_max = 2;
  OutputFormat output = OutputFormat::Json;
  Budget budget;

  friend bool operator==(const Request& a, const Request& b);
};

enum class Status { Ok, Unknown, Inconclusive, Error };

struct Report {
  Request request;
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  Status status = Status::Ok;
  std::string reason;

  /// 0 ok, 1 unknown/inconclusive, 2 error.
  int exit_code() const;
};

Report run(const Request& request);

nlohmann::ordered_json to_json(const Request& request);
Request request_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const Report& report);
Report report_from_json(const nlohmann::ordered_json& j);

/// Report rendered in the request's output format, newline terminated.
std::string render(const Report& report);

std::string_view to_string(Status status);
std::string_view to_string(OutputFormat format);

/// Full CLI: parses argv, runs, writes the payload to `out` and diagnostics to
/// `err`. Returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace finv::cli
