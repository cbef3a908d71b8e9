#include "finv/cli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "finv/errors.hpp"
#include "finv/frobenius.hpp"
#include "finv/invariants.hpp"

namespace finv::cli {

using nlohmann::ordered_json;
using finv::to_string;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Prime require_prime(const Request& r) {
  if (!r.prime) throw UsageError(r.command + " needs --prime");
  return Prime(*r.prime);
}

std::uint64_t require_degree(const Request& r) {
  if (!r.degree) throw UsageError(r.command + " needs --degree");
  return *r.degree;
}

DiagonalForm require_form(const Request& r, Prime p) {
  if (r.exponents.empty()) {
    if (r.degree) return DiagonalForm(p, std::vector<std::uint64_t>(*r.degree, *r.degree), r.coefficients);
    throw UsageError(r.command + " needs --exponents (or --degree for a Fermat form)");
  }
  return DiagonalForm(p, r.exponents, r.coefficients);
}

std::string prefix_string(const CarryFreePrefix& prefix) {
  return prefix.infinite ? "inf" : std::to_string(prefix.length);
}

ordered_json rational_list(const std::vector<Rational>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

ordered_json ideal_json(const IdealFp& ideal) {
  ordered_json gens = ordered_json::array();
  for (const auto& g : ideal.generators()) {
    ordered_json terms = ordered_json::array();
    for (const auto& [exp, c] : g.serialize()) terms.push_back(ordered_json::array({exp, c}));
    gens.push_back(std::move(terms));
  }
  return gens;
}

ordered_json fingerprint_json(const IdealFingerprint& fp) {
  ordered_json vars = ordered_json::array();
  for (std::size_t i = 0; i < fp.contains_variable.size(); ++i) {
    if (fp.contains_variable[i]) vars.push_back(i + 1);
  }
  std::string label = fp.unit() ? "UNIT" : fp.maximal() ? "MAXIMAL" : "PROPER";
  return ordered_json{{"class", label}, {"min_generator_degree", fp.min_degree}, {"variables", vars}};
}

Report run_fpt(Report report) {
  const auto& r = report.request;
  const Prime p = require_prime(r);
  const auto form = require_form(r, p);
  const auto prefix = carry_free_prefix(form.reciprocal_exponents(), p);
  report.result["fpt"] = to_string(fpt_diagonal(form));
  report.result["L"] = prefix_string(prefix);
  report.result["reciprocal_sum"] = to_string(form.reciprocal_sum());
  return report;
}

Report run_fermat_fpt(Report report) {
  const auto& r = report.request;
  const Prime p = require_prime(r);
  const auto d = require_degree(r);
  const auto dec = decompose_fermat(d, p);
  report.result["fpt"] = to_string(fpt_fermat(d, p));
  if (dec.ell) {
    report.result["ell"] = *dec.ell;
  } else {
    report.result["omega"] = dec.omega;
    report.result["a"] = dec.a;
  }
  return report;
}

Report run_test_ideal(Report report) {
  const auto& r = report.request;
  const Prime p = require_prime(r);
  const auto form = require_form(r, p);
  const Rational fpt = fpt_diagonal(form);
  if (!r.lambda) {
    const auto cls = classify_test_ideal_at_fpt(form);
    report.result["fpt"] = to_string(fpt);
    report.result["class"] = std::string(to_string(cls.tag));
    report.result["case"] = std::string(to_string(cls.witness));
    if (cls.tag == TestIdealTag::Unknown) {
      report.status = Status::Unknown;
      report.reason = "no closed form applies; rerun with --lambda to query the oracle";
    }
    return report;
  }
  TestIdealOptions options;
  options.e_hint = r.e;
  options.e_max = std::max(r.e_max, r.e);
  options.budget = r.budget;
  const auto result = test_ideal(form, *r.lambda, options);
  const MembershipOptions membership{std::nullopt, r.budget};
  report.result["lambda"] = to_string(*r.lambda);
  report.result["level"] = result.level;
  report.result["power"] = result.power;
  report.result["stabilized_heuristically"] = result.stabilized_heuristically;
  report.result["shape"] = std::string(to_string(classify_ideal(result.ideal, form, membership)));
  report.result["generators"] = ideal_json(result.ideal);
  return report;
}

Report run_jumping(Report report) {
  const auto& r = report.request;
  const auto jumps = fermat_jumps_unit_interval(require_degree(r), require_prime(r));
  report.result["fpt"] = to_string(jumps.fpt);
  report.result["jumps"] = rational_list(jumps.extra_jumps);
  report.result["complete"] = jumps.complete;
  report.result["regime"] = std::string(to_string(jumps.regime));
  if (jumps.candidate) report.result["candidate"] = to_string(*jumps.candidate);
  return report;
}

Report run_nu(Report report) {
  const auto& r = report.request;
  const Prime p = require_prime(r);
  const auto form = require_form(r, p);
  const auto value = nu(form, r.e, r.budget);
  const auto [lo, hi] = fpt_bracket(form, r.e, r.budget);
  report.result["nu"] = value;
  report.result["bracket"] = ordered_json::array({to_string(lo), to_string(hi)});
  return report;
}

bool shapes_agree(TestIdealTag tag, IdealShape shape) {
  return (tag == TestIdealTag::PrincipalF && shape == IdealShape::PrincipalF) ||
         (tag == TestIdealTag::Maximal && shape == IdealShape::Maximal);
}

Report run_verify(Report report) {
  const auto& r = report.request;
  const Prime p = require_prime(r);
  const auto form = require_form(r, p);
  const Rational fpt = fpt_diagonal(form);
  report.result["fpt"] = to_string(fpt);

  bool agree = true;
  bool inconclusive = false;
  ordered_json brackets = ordered_json::array();
  std::optional<std::uint64_t> previous;
  for (std::uint64_t e = 1; e <= r.e_max; ++e) {
    try {
      const auto value = nu(form, e, r.budget);
      const auto [lo, hi] = fpt_bracket(form, e, r.budget);
      const bool inside = lo < fpt && fpt <= hi;
      const bool monotone = !previous || value >= p.value() * *previous;
      agree = agree && inside && monotone;
      brackets.push_back({{"e", e}, {"nu", value}, {"bracket", {to_string(lo), to_string(hi)}},
                          {"contains_fpt", inside}, {"monotone", monotone}});
      previous = value;
    } catch (const ResourceError& err) {
      inconclusive = true;
      brackets.push_back({{"e", e}, {"inconclusive", err.what()}});
      break;
    }
  }
  report.result["brackets"] = brackets;

  const auto cls = classify_test_ideal_at_fpt(form);
  report.result["class"] = std::string(to_string(cls.tag));
  try {
    TestIdealOptions options;
    options.e_max = std::max<std::uint64_t>(r.e_max, 2);
    options.budget = r.budget;
    const auto oracle = test_ideal(form, fpt, options);
    const auto shape = classify_ideal(oracle.ideal, form, MembershipOptions{std::nullopt, r.budget});
    report.result["oracle_shape"] = std::string(to_string(shape));
    report.result["oracle_level"] = oracle.level;
    report.result["stabilized_heuristically"] = oracle.stabilized_heuristically;
    if (cls.tag != TestIdealTag::Unknown) agree = agree && shapes_agree(cls.tag, shape);
  } catch (const InconclusiveError& err) {
    inconclusive = true;
    report.result["oracle_shape"] = "INCONCLUSIVE";
    report.reason = err.what();
  } catch (const ResourceError& err) {
    inconclusive = true;
    report.result["oracle_shape"] = "INCONCLUSIVE";
    report.reason = err.what();
  }
  report.result["agree"] = agree;
  if (!agree) {
    report.status = Status::Error;
    report.reason = "formula and oracle disagree";
  } else if (inconclusive) {
    report.status = Status::Inconclusive;
  } else if (cls.tag == TestIdealTag::Unknown) {
    report.status = Status::Unknown;
    report.reason = "no closed form for the test ideal; oracle shape reported";
  }
  return report;
}

Report run_sweep(Report report) {
  const auto& r = report.request;
  if (!r.prime_from || !r.prime_to) throw UsageError("sweep needs --from and --to");
  if (*r.prime_from > *r.prime_to) throw UsageError("sweep range is empty");
  ordered_json rows = ordered_json::array();
  const bool fermat = r.exponents.empty() && r.degree;
  for (const Prime p : primes_in_range(*r.prime_from, *r.prime_to)) {
    const auto form = require_form(r, p);
    std::uint64_t modulus = 1;
    for (auto d : form.exponents()) modulus = std::lcm(modulus, d);
    const auto prefix = carry_free_prefix(form.reciprocal_exponents(), p);
    const auto cls = classify_test_ideal_at_fpt(form);
    ordered_json row{{"p", p.value()},
                     {"fpt", to_string(fpt_diagonal(form))},
                     {"L", prefix_string(prefix)},
                     {"case", prefix.infinite ? "carry-free" : "truncated"},
                     {"class", std::string(to_string(cls.tag))},
                     {"residue", std::to_string(p.value() % modulus) + " mod " + std::to_string(modulus)}};
    if (fermat) {
      row["regime"] = p.value() > *r.degree
                          ? std::string(to_string(fermat_jumps_unit_interval(*r.degree, p).regime))
                          : std::string("n/a");
    }
    rows.push_back(std::move(row));
  }
  report.result["rows"] = rows;
  return report;
}

Report run_jump_scan(Report report) {
  const auto& r = report.request;
  const auto d = require_degree(r);
  const Prime p = require_prime(r);
  const auto changes = jump_scan(d, p, r.e_max, r.budget);
  ordered_json rows = ordered_json::array();
  for (const auto& c : changes) {
    ordered_json row{{"lambda", to_string(c.lambda)}};
    const ordered_json fp = fingerprint_json(c.fingerprint);
    for (auto it = fp.begin(); it != fp.end(); ++it) row[it.key()] = it.value();
    rows.push_back(std::move(row));
  }
  report.result["resolution"] = "1/" + pow_big(p, r.e_max).str();
  report.result["heuristic"] = true;
  report.result["rows"] = rows;
  return report;
}

std::string cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  const bool flat = v.is_array() && std::none_of(v.begin(), v.end(), [](const ordered_json& x) {
    return x.is_array() || x.is_object();
  });
  if (flat) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += cell(v[i]);
    }
    return out;
  }
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  auto emit_rows = [&](const ordered_json& rows) {
    if (rows.empty()) return;
    bool first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
      out << (first ? "" : ",") << csv_escape(it.key());
      first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
      first = true;
      for (auto it = row.begin(); it != row.end(); ++it) {
        out << (first ? "" : ",") << csv_escape(cell(it.value()));
        first = false;
      }
      out << '\n';
    }
  };
  if (report.status == Status::Error && report.result.empty()) {
    out << "status,reason\n" << to_string(report.status) << ',' << csv_escape(report.reason) << '\n';
    return out.str();
  }
  if (report.result.contains("rows")) {
    emit_rows(report.result["rows"]);
    return out.str();
  }
  ordered_json row = report.result;
  row["status"] = std::string(to_string(report.status));
  emit_rows(ordered_json::array({row}));
  return out.str();
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "command: " << report.request.command << '\n';
  out << "status: " << to_string(report.status) << '\n';
  if (!report.reason.empty()) out << "reason: " << report.reason << '\n';
  for (auto it = report.result.begin(); it != report.result.end(); ++it) {
    if (it.key() == "rows") {
      for (const auto& row : it.value()) {
        bool first = true;
        for (auto cellit = row.begin(); cellit != row.end(); ++cellit) {
          out << (first ? "" : "  ") << cellit.key() << '=' << cell(cellit.value());
          first = false;
        }
        out << '\n';
      }
    } else {
      out << it.key() << ": " << cell(it.value()) << '\n';
    }
  }
  return out.str();
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw UsageError("unknown output format '" + s + "'");
}

Status parse_status(const std::string& s) {
  if (s == "ok") return Status::Ok;
  if (s == "unknown") return Status::Unknown;
  if (s == "inconclusive") return Status::Inconclusive;
  return Status::Error;
}

void validate(const Request& r) {
  static const std::vector<std::string> commands{"fpt",   "fermat-fpt", "test-ideal", "jumping",
                                                 "nu",    "verify",     "sweep",      "jump-scan"};
  if (std::find(commands.begin(), commands.end(), r.command) == commands.end()) {
    throw UsageError("unknown command '" + r.command + "'");
  }
  if (r.lambda && *r.lambda <= 0) throw UsageError("--lambda must be positive");
  if (r.e == 0 || r.e_max == 0) throw UsageError("levels must be positive");
  if (r.prime) Prime{*r.prime};
}

}  // namespace

bool operator==(const Request& a, const Request& b) { return to_json(a) == to_json(b); }

int Report::exit_code() const {
  switch (status) {
    case Status::Ok: return 0;
    case Status::Unknown:
    case Status::Inconclusive: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

Report run(const Request& request) {
  Report report;
  report.request = request;
  try {
    validate(request);
    const auto& c = request.command;
    if (c == "fpt") return run_fpt(report);
    if (c == "fermat-fpt") return run_fermat_fpt(report);
    if (c == "test-ideal") return run_test_ideal(report);
    if (c == "jumping") return run_jumping(report);
    if (c == "nu") return run_nu(report);
    if (c == "verify") return run_verify(report);
    if (c == "sweep") return run_sweep(report);
    return run_jump_scan(report);
  } catch (const InconclusiveError& err) {
    report.result = ordered_json::object();
    report.status = Status::Inconclusive;
    report.reason = err.what();
  } catch (const ResourceError& err) {
    report.result = ordered_json::object();
    report.status = Status::Inconclusive;
    report.reason = err.what();
  } catch (const std::exception& err) {
    report.result = ordered_json::object();
    report.status = Status::Error;
    report.reason = err.what();
  }
  return report;
}

ordered_json to_json(const Request& r) {
  ordered_json j;
  j["command"] = r.command;
  if (!r.exponents.empty()) j["exponents"] = r.exponents;
  if (!r.coefficients.empty()) j["coefficients"] = r.coefficients;
  if (r.degree) j["degree"] = *r.degree;
  if (r.prime) j["prime"] = *r.prime;
  if (r.prime_from) j["prime_from"] = *r.prime_from;
  if (r.prime_to) j["prime_to"] = *r.prime_to;
  if (r.lambda) j["lambda"] = to_string(*r.lambda);
  j["e"] = r.e;
  j["e_max"] = r.e_max;
  j["output"] = std::string(to_string(r.output));
  j["budget"] = {{"terms", r.budget.max_terms}, {"columns", r.budget.max_columns}, {"states", r.budget.max_states}};
  return j;
}

Request request_from_json(const ordered_json& j) {
  Request r;
  r.command = j.at("command").get<std::string>();
  if (j.contains("exponents")) r.exponents = j["exponents"].get<std::vector<std::uint64_t>>();
  if (j.contains("coefficients")) r.coefficients = j["coefficients"].get<std::vector<std::uint64_t>>();
  if (j.contains("degree")) r.degree = j["degree"].get<std::uint64_t>();
  if (j.contains("prime")) r.prime = j["prime"].get<std::uint64_t>();
  if (j.contains("prime_from")) r.prime_from = j["prime_from"].get<std::uint64_t>();
  if (j.contains("prime_to")) r.prime_to = j["prime_to"].get<std::uint64_t>();
  if (j.contains("lambda")) r.lambda = parse_rational(j["lambda"].get<std::string>());
  r.e = j.at("e").get<std::uint64_t>();
  r.e_max = j.at("e_max").get<std::uint64_t>();
  r.output = parse_format(j.at("output").get<std::string>());
  const auto& b = j.at("budget");
  r.budget.max_terms = b.at("terms").get<std::uint64_t>();
  r.budget.max_columns = b.at("columns").get<std::uint64_t>();
  r.budget.max_states = b.at("states").get<std::uint64_t>();
  return r;
}

ordered_json to_json(const Report& report) {
  ordered_json j;
  j["header"] = {{"tool", kToolName}, {"version", kVersion}};
  j["request"] = to_json(report.request);
  j["status"] = std::string(to_string(report.status));
  if (!report.reason.empty()) j["reason"] = report.reason;
  j["result"] = report.result;
  return j;
}

Report report_from_json(const ordered_json& j) {
  Report report;
  report.request = request_from_json(j.at("request"));
  report.status = parse_status(j.at("status").get<std::string>());
  if (j.contains("reason")) report.reason = j["reason"].get<std::string>();
  report.result = j.at("result");
  return report;
}

std::string render(const Report& report) {
  switch (report.request.output) {
    case OutputFormat::Json: return to_json(report).dump() + "\n";
    case OutputFormat::Csv: return render_csv(report);
    case OutputFormat::Text: return render_text(report);
  }
  return {};
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Ok: return "ok";
    case Status::Unknown: return "unknown";
    case Status::Inconclusive: return "inconclusive";
    case Status::Error: return "error";
  }
  return "error";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "json";
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact F-pure thresholds, test ideals and F-jumping numbers of diagonal hypersurfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Request request;
  try {
    request.budget = Budget::from_env();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  std::string output = "json";
  std::string lambda;
  std::optional<std::uint64_t> budget_terms;
  std::optional<std::uint64_t> budget_columns;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--exponents", request.exponents, "exponents d_1,...,d_n")->delimiter(',');
    sub->add_option("--coefficients", request.coefficients, "nonzero coefficients u_1,...,u_n")->delimiter(',');
    sub->add_option("--degree", request.degree, "Fermat degree d (d variables)");
    sub->add_option("--prime", request.prime, "characteristic p");
    sub->add_option("--from", request.prime_from, "first prime of a sweep");
    sub->add_option("--to", request.prime_to, "last prime of a sweep");
    sub->add_option("--lambda", lambda, "parameter as a/b");
    sub->add_option("--e", request.e, "Frobenius level e");
    sub->add_option("--e-max", request.e_max, "largest Frobenius level");
    sub->add_option("--output", output, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--budget-terms", budget_terms, "term budget for the oracle");
    sub->add_option("--budget-columns", budget_columns, "matrix column budget for membership");
    sub->callback([&request, name] { request.command = name; });
  };
  add("fpt", "F-pure threshold of a diagonal hypersurface");
  add("fermat-fpt", "F-pure threshold of a Fermat hypersurface");
  add("test-ideal", "test ideal at the threshold (closed form) or at --lambda (oracle)");
  add("jumping", "F-jumping numbers of a Fermat hypersurface in (0,1]");
  add("nu", "nu_f(p^e) and the bracket it gives for the threshold");
  add("verify", "closed forms against the brute-force oracle");
  add("sweep", "threshold table over a prime range");
  add("jump-scan", "grid scan for test-ideal changes of a Fermat hypersurface");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage;
    const int code = app.exit(e, out, usage);
    err << usage.str();
    return code == 0 ? 0 : 2;
  }

  try {
    request.output = parse_format(output);
    if (!lambda.empty()) request.lambda = parse_rational(lambda);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (budget_terms) request.budget.max_terms = *budget_terms;
  if (budget_columns) request.budget.max_columns = *budget_columns;

  const Report report = run(request);
  if (report.status != Status::Ok && !report.reason.empty()) {
    err << to_string(report.status) << ": " << report.reason << '\n';
  }
  out << render(report);
  return report.exit_code();
}

}  // namespace finv::cli
