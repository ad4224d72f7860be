#pragma once

// Command-line front end: eval, verify, zeta, sieve.
//
// Exit codes: 0 success (all checks passed), 1 a verification failed,
// 2 usage or domain error, 3 internal consistency error.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "divsum/divsum.hpp"

namespace divsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  std::string command;
  std::string quantity;
  std::string n_text;
  std::string n_range;
  std::optional<long> s_int;
  std::optional<double> s_real;
  std::optional<std::string> s_auto;
  std::string identity;
  double tol = kDefaultRelTol;
  std::string output_format = "text";
  std::string output_path;
  std::uint64_t prime_bound = 10000;
  int truncation = -1;
  std::string form = "product";
  std::uint64_t divisor = 1;
  unsigned parallelism = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> q_args;
  std::string decay;
  bool summary_only = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<long> parse_long(const std::string& text) {
  long value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

inline SParam parse_s_token(const std::string& text) {
  if (auto i = parse_long(text)) return SParam::integer(*i);
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used == text.size()) return SParam::real(x);
  } catch (const std::exception&) {
  }
  throw UsageError("cannot parse s value '" + text + "'");
}

// --s-int and --s-real are explicit; --s picks integer mode when the token
// is an integer literal.
inline std::optional<SParam> config_s(const RunConfig& c) {
  if (c.s_int) return SParam::integer(*c.s_int);
  if (c.s_real) return SParam::real(*c.s_real);
  if (c.s_auto) return parse_s_token(*c.s_auto);
  return std::nullopt;
}

inline SParam require_s(const RunConfig& c, const std::string& what) {
  auto s = config_s(c);
  if (!s) throw UsageError(what + " needs --s, --s-int or --s-real");
  return *s;
}

inline Factorization parse_n(const std::string& text) {
  if (text.empty()) throw UsageError("--n is required");
  mpz_class n;
  if (n.set_str(text, 10) != 0) throw UsageError("cannot parse n '" + text + "'");
  if (sgn(n) <= 0) throw UsageError("n must be >= 1");
  return factorize(n);
}

inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--n-range must look like lo:hi");
  auto lo = parse_long(text.substr(0, colon));
  auto hi = parse_long(text.substr(colon + 1));
  if (!lo || !hi) throw UsageError("cannot parse range '" + text + "'");
  if (*lo < 1 || *lo > *hi) throw UsageError("range must satisfy 1 <= lo <= hi");
  return {static_cast<std::uint64_t>(*lo), static_cast<std::uint64_t>(*hi)};
}

inline GdForm parse_form(const std::string& text) {
  for (auto form : {GdForm::kDivisorSum, GdForm::kProduct, GdForm::kAlternate, GdForm::kZetaLocal}) {
    if (text == to_string(form)) return form;
  }
  throw UsageError("unknown form '" + text + "'");
}

inline std::vector<SParam> parse_s_list(const std::string& text) {
  std::vector<SParam> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) out.push_back(parse_s_token(token));
  if (out.empty()) throw UsageError("--decay needs at least one s value");
  return out;
}

struct Rendered {
  std::string body;
  std::string summary;  // goes to stderr for json/csv
  int code = kExitOk;
};

inline const std::vector<std::string>& eval_quantities() {
  static const std::vector<std::string> names = {
      "dineva", "gdineva", "zeta_n", "J", "sigma", "phi", "mu", "radical",
      "mobius_sum", "squarefree_sum", "totient_sum", "lambda", "sigma_factor"};
  return names;
}

inline ArithValue eval_quantity(const RunConfig& c) {
  const Factorization f = parse_n(c.n_text);
  const std::string& qn = c.quantity;
  if (qn == "dineva") return dineva(f);
  if (qn == "gdineva") return generalized_dineva(f, require_s(c, qn), parse_form(c.form));
  if (qn == "zeta_n") return partial_zeta(f, require_s(c, qn));
  if (qn == "J") return J(f, require_s(c, qn));
  if (qn == "sigma") return ArithValue(sigma(f));
  if (qn == "phi") return ArithValue::unsigned_integer(totient(f));
  if (qn == "mu") return ArithValue::integer(mobius(f));
  if (qn == "radical") return ArithValue::unsigned_integer(radical(f));
  if (qn == "mobius_sum") return mobius_divisor_sum(f, require_s(c, qn));
  if (qn == "squarefree_sum") return squarefree_dirichlet_sum(f, require_s(c, qn));
  if (qn == "totient_sum") return totient_sum_check(f);
  if (qn == "lambda") return lambda_ratio(c.divisor, f, require_s(c, qn));
  if (qn == "sigma_factor") {
    if (f.omega() != 1 || f.factors()[0].exponent != 1) throw UsageError("sigma_factor needs prime n");
    const auto s = require_s(c, qn);
    if (c.truncation >= 0) return sigma_local_factor(f.n(), s, SigmaTruncated{c.truncation});
    return sigma_local_factor(f.n(), s, SigmaClosed{});
  }
  throw UsageError("unknown quantity '" + qn + "'");
}

inline Rendered cmd_eval(const RunConfig& c) {
  const ArithValue value = eval_quantity(c);
  const auto s = config_s(c);
  Rendered r;
  if (c.output_format == "json") {
    nlohmann::ordered_json j;
    j["schema_version"] = io::kSchemaVersion;
    j["quantity"] = c.quantity;
    j["n"] = c.n_text;
    if (s) {
      j["s_mode"] = s->mode_name();
      j["s_value"] = s->value_string();
    }
    j["value"] = value.to_string();
    j["mode"] = std::string(to_string(value.mode()));
    r.body = j.dump(2) + "\n";
  } else if (c.output_format == "csv") {
    r.body = "quantity,n,s_mode,s_value,value,mode\n" + c.quantity + "," + c.n_text + "," +
             (s ? s->mode_name() : "") + "," + (s ? s->value_string() : "") + "," +
             value.to_string() + "," + std::string(to_string(value.mode())) + "\n";
  } else {
    r.body = value.to_string() + " (" + std::string(to_string(value.mode())) + ")\n";
  }
  return r;
}

inline Rendered cmd_verify(const RunConfig& c) {
  if (c.identity.empty()) throw UsageError("--identity is required");
  if (!is_known_identity(c.identity, c.seed)) {
    throw UsageError("unknown identity '" + c.identity + "'");
  }
  std::uint64_t lo = 0, hi = 0;
  if (!c.n_range.empty()) {
    std::tie(lo, hi) = parse_range(c.n_range);
  } else {
    const auto f = parse_n(c.n_text);
    lo = hi = f.n();
  }
  const SParam s = config_s(c).value_or(SParam::integer(0));
  const auto reports = verify_range(c.identity, lo, hi, s, {c.tol, c.seed}, c.parallelism);
  const auto summary = summarize(reports);

  Rendered r;
  std::ostringstream body;
  if (c.summary_only) {
    std::vector<IdentityReport> failures;
    for (const auto& rep : reports) {
      if (!rep.passed) failures.push_back(rep);
    }
    io::write_reports(body, failures, c.output_format);
  } else {
    io::write_reports(body, reports, c.output_format);
  }
  r.body = body.str();
  r.summary = io::summary_line(summary) + "\n";
  r.code = summary.passed == summary.total ? kExitOk : kExitFailed;
  return r;
}

inline Rendered cmd_zeta(const RunConfig& c) {
  const SParam s = require_s(c, "zeta");
  const double sv = s.as_double();
  if (!(sv > 1.0)) throw UsageError("zeta needs s > 1");
  const auto product = truncated_global_product(c.prime_bound, sv);
  const auto z_s = zeta_reference_detailed(sv, c.tol);
  const auto z_2s = zeta_reference_detailed(2.0 * sv, c.tol);
  const double ratio = z_s.value / z_2s.value;
  const double diff = std::fabs(product.value - ratio);

  Rendered r;
  if (c.output_format == "json") {
    nlohmann::ordered_json j;
    j["schema_version"] = io::kSchemaVersion;
    j["s"] = s.value_string();
    j["prime_bound"] = product.prime_bound;
    j["primes_used"] = product.primes_used;
    j["product"] = product.value;
    j["reference_ratio"] = ratio;
    j["abs_diff"] = diff;
    j["tail_bound"] = product.tail_bound;
    r.body = j.dump(2) + "\n";
  } else if (c.output_format == "csv") {
    r.body = "s,prime_bound,primes_used,product,reference_ratio,abs_diff,tail_bound\n" +
             s.value_string() + "," + std::to_string(product.prime_bound) + "," +
             std::to_string(product.primes_used) + "," + format_double(product.value) + "," +
             format_double(ratio) + "," + format_double(diff) + "," +
             format_double(product.tail_bound) + "\n";
  } else {
    std::ostringstream out;
    out << "s=" << s.value_string() << " prime_bound=" << product.prime_bound
        << " primes_used=" << product.primes_used << '\n'
        << "product=" << format_double(product.value) << '\n'
        << "reference_ratio=" << format_double(ratio) << '\n'
        << "abs_diff=" << format_double(diff) << '\n'
        << "tail_bound=" << format_double(product.tail_bound) << '\n';
    r.body = out.str();
  }
  return r;
}

inline Rendered cmd_sieve(const RunConfig& c) {
  const Factorization f = parse_n(c.n_text);
  const SParam s = config_s(c).value_or(SParam::integer(0));
  const auto weights = weight_table(f, s);
  std::optional<ArithValue> q;
  if (!c.q_args.empty()) {
    if (c.q_args.size() != 2) throw UsageError("--Q takes X and R");
    q = quadratic_form_Q(c.q_args[0], c.q_args[1], weights);
  }
  std::vector<SParam> decay_s;
  std::vector<DecayRow> decay;
  if (!c.decay.empty()) {
    decay_s = parse_s_list(c.decay);
    decay = weight_decay_profile(f, decay_s);
  }

  Rendered r;
  std::ostringstream out;
  if (c.output_format == "json") {
    auto j = io::to_json(weights);
    if (q) {
      j["Q"] = {{"X", c.q_args[0]}, {"R", c.q_args[1]}, {"value", q->to_string()}};
    }
    if (!decay.empty()) {
      auto rows = nlohmann::ordered_json::array();
      for (const auto& row : decay) {
        nlohmann::ordered_json jr;
        jr["d"] = row.d;
        auto values = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < decay_s.size(); ++i) {
          values.push_back({{"s", decay_s[i].value_string()}, {"lambda", row.lambda[i].to_string()}});
        }
        jr["values"] = std::move(values);
        rows.push_back(std::move(jr));
      }
      j["decay"] = std::move(rows);
    }
    out << j.dump(2) << '\n';
  } else {
    io::write_weights(out, weights, c.output_format);
    if (q) out << "Q(X=" << c.q_args[0] << ", R=" << c.q_args[1] << ") = " << q->to_string() << '\n';
    for (const auto& row : decay) {
      out << "decay d=" << row.d;
      for (std::size_t i = 0; i < decay_s.size(); ++i) {
        out << " s=" << decay_s[i].value_string() << ":" << row.lambda[i].to_string();
      }
      out << '\n';
    }
  }
  r.body = out.str();
  return r;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisor-sum / Euler-product identity evaluator and verifier", "divsum"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  app.add_option("--output", c.output_format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", c.output_path, "write output to FILE");
  app.add_option("--tol", c.tol, "relative tolerance for approximate comparisons")
      ->check(CLI::PositiveNumber);
  app.add_option("--parallelism", c.parallelism, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", c.seed, "seed for randomized weights (custom:random)");

  auto add_s = [&](CLI::App* sub) {
    auto* si = sub->add_option("--s-int", c.s_int, "integer s (exact arithmetic)");
    auto* sr = sub->add_option("--s-real", c.s_real, "real s (double precision)");
    auto* sa = sub->add_option("--s", c.s_auto, "s; integer literals select exact mode");
    si->excludes(sr)->excludes(sa);
    sr->excludes(sa);
  };

  auto* eval = app.add_subcommand("eval", "evaluate one quantity");
  eval->add_option("quantity", c.quantity, "quantity name")->required()
      ->check(CLI::IsMember(detail::eval_quantities()));
  eval->add_option("--n", c.n_text, "positive integer")->required();
  eval->add_option("--form", c.form, "gdineva form: divisor_sum, product, alternate, zeta_local");
  eval->add_option("--d", c.divisor, "divisor for lambda");
  eval->add_option("--K", c.truncation, "truncation depth for sigma_factor");
  add_s(eval);

  auto* verify_cmd = app.add_subcommand("verify", "verify an identity over a range of n");
  verify_cmd->add_option("--identity", c.identity, "identity name")->required();
  auto* range_opt = verify_cmd->add_option("--n-range", c.n_range, "lo:hi");
  auto* n_opt = verify_cmd->add_option("--n", c.n_text, "single n");
  range_opt->excludes(n_opt);
  verify_cmd->add_flag("--summary-only", c.summary_only, "only print failing reports");
  add_s(verify_cmd);

  auto* zeta_cmd = app.add_subcommand("zeta", "truncated Euler product vs zeta(s)/zeta(2s)");
  zeta_cmd->add_option("--prime-bound", c.prime_bound, "largest prime P");
  add_s(zeta_cmd);

  auto* sieve_cmd = app.add_subcommand("sieve", "Selberg weight table");
  sieve_cmd->add_option("--n", c.n_text, "sieve modulus")->required();
  sieve_cmd->add_option("--Q", c.q_args, "X R")->expected(2);
  sieve_cmd->add_option("--decay", c.decay, "comma-separated s values");
  add_s(sieve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  detail::Rendered rendered;
  try {
    if (*eval) {
      rendered = detail::cmd_eval(c);
    } else if (*verify_cmd) {
      rendered = detail::cmd_verify(c);
    } else if (*zeta_cmd) {
      rendered = detail::cmd_zeta(c);
    } else {
      rendered = detail::cmd_sieve(c);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::kConsistency ? kExitInternal : kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output_path.empty()) {
    file.open(c.output_path);
    if (!file) {
      err << "error: cannot open " << c.output_path << '\n';
      return kExitUsage;
    }
    sink = &file;
  }
  *sink << rendered.body;
  if (!rendered.summary.empty()) {
    if (c.output_format == "text" && c.output_path.empty()) {
      out << rendered.summary;
    } else {
      err << rendered.summary;
    }
  }
  return rendered.code;
}

}  // namespace divsum::cli
