#pragma once

// Identity registry and the verification harness. Every entry computes its
// left side by divisor enumeration (or per-divisor evaluation) and its right
// side by a closed form, along separate code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "divsum/identities.hpp"
#include "divsum/report.hpp"
#include "divsum/selberg.hpp"
#include "divsum/zeta_checks.hpp"

namespace divsum {

struct VerifyOptions {
  double tol = kDefaultRelTol;
  std::uint64_t seed = 0;  // feeds custom:random
};

struct IdentityEntry {
  std::string name;
  std::string description;
  // F(n) = F(rad(n)) for this identity's left side.
  bool squarefree_supported = false;
  std::function<IdentityReport(const Factorization&, const SParam&, const VerifyOptions&)> check;
};

namespace detail {

inline IdentityReport check_custom(const LocalWeight& g, const std::string& name,
                                   const Factorization& f, const SParam& s, double tol) {
  auto [sum_side, product_side] = identity_pair(f, g, s);
  return make_report(name, f.n(), s, std::move(sum_side), std::move(product_side), tol,
                     Enumeration::kSquarefree);
}

inline std::optional<LocalWeight> custom_weight(const std::string& key, std::uint64_t seed) {
  if (key == "random") return weights::seeded_rational(seed);
  for (auto& w : weights::builtin()) {
    if (w.name == key) return w;
  }
  return std::nullopt;
}

}  // namespace detail

inline const std::vector<IdentityEntry>& identity_registry() {
  static const std::vector<IdentityEntry> registry = {
      {"dineva", "sum mu^2(d)/phi(d) = n/phi(n)", true,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         return make_report("dineva", f.n(), s, dineva(f), dineva_closed_form(f), o.tol,
                            Enumeration::kSquarefree);
       }},
      {"generalized_dineva", "sum mu^2(d)/(phi(d) d^s) = prod (1 + 1/((p-1) p^s))", true,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         return make_report("generalized_dineva", f.n(), s,
                            generalized_dineva(f, s, GdForm::kDivisorSum),
                            generalized_dineva(f, s, GdForm::kProduct), o.tol,
                            Enumeration::kSquarefree);
       }},
      {"mobius_sum", "sum mu(d)/d^s = prod (1 - p^-s) = 1/zeta_n(s)", true,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         return make_report("mobius_sum", f.n(), s, mobius_divisor_sum(f, s),
                            mobius_product(f, s), o.tol, Enumeration::kSquarefree);
       }},
      {"squarefree_sum", "sum mu^2(d)/d^s = prod (1 + p^-s)", true,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         return make_report("squarefree_sum", f.n(), s, squarefree_dirichlet_sum(f, s),
                            squarefree_dirichlet_product(f, s), o.tol, Enumeration::kSquarefree);
       }},
      {"totient_sum", "sum phi(d) = n", false,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         return make_report("totient_sum", f.n(), s, totient_sum_check(f),
                            ArithValue::unsigned_integer(f.n()), o.tol, Enumeration::kFull);
       }},
      {"sigma_partial", "prod closed sigma local factors = zeta_n(s) zeta_n(s-1), s > 1", true,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         auto [lhs, rhs] = sigma_closed_identity(f, s);
         return make_report("sigma_partial", f.n(), s, std::move(lhs), std::move(rhs), o.tol,
                            std::nullopt);
       }},
      {"selberg_lambda_equiv", "mu(d) J_{n/d}/J_n = mu(d) prod 1/(1 + h_s(p)) for all d", true,
       [](const Factorization& f, const SParam& s, const VerifyOptions& o) {
         ArithValue ratio_total = s.is_integer() ? ArithValue::integer(0) : ArithValue(0.0);
         ArithValue product_total = ratio_total;
         bool all_equal = true;
         for_each_squarefree_divisor(f, [&](const Divisor& d) {
           const ArithValue ratio = lambda_ratio(d.value, f, s);
           const ArithValue product = lambda_product(
               FactorizationBuilder::make(d.value, {d.factors().begin(), d.factors().end()}), s);
           all_equal = all_equal && approx_equal(ratio, product, o.tol);
           ratio_total += ratio;
           product_total += product;
         });
         auto report = make_report("selberg_lambda_equiv", f.n(), s, std::move(ratio_total),
                                   std::move(product_total), o.tol, Enumeration::kSquarefree);
         report.passed = report.passed && all_equal;
         return report;
       }},
  };
  return registry;
}

inline std::string canonical_identity_name(const std::string& name) {
  if (name == "gdineva") return "generalized_dineva";
  return name;
}

inline bool is_known_identity(const std::string& raw, std::uint64_t seed = 0) {
  const std::string name = canonical_identity_name(raw);
  if (name.rfind("custom:", 0) == 0) return detail::custom_weight(name.substr(7), seed).has_value();
  return std::any_of(identity_registry().begin(), identity_registry().end(),
                     [&](const IdentityEntry& e) { return e.name == name; });
}

// Whether F(n) = F(rad(n)) holds for the named identity's left side.
inline bool is_squarefree_supported(const std::string& raw) {
  const std::string name = canonical_identity_name(raw);
  if (name.rfind("custom:", 0) == 0) return true;
  for (const auto& e : identity_registry()) {
    if (e.name == name) return e.squarefree_supported;
  }
  fail(ErrorKind::kLookup, "unknown identity '" + raw + "'");
}

inline IdentityReport verify(const std::string& raw_name, const Factorization& f, const SParam& s,
                             const VerifyOptions& options = {}) {
  if (!(options.tol > 0)) fail(ErrorKind::kDomain, "tol must be positive");
  const std::string name = canonical_identity_name(raw_name);
  if (name.rfind("custom:", 0) == 0) {
    auto weight = detail::custom_weight(name.substr(7), options.seed);
    if (!weight) fail(ErrorKind::kLookup, "unknown local weight '" + name.substr(7) + "'");
    return detail::check_custom(*weight, name, f, s, options.tol);
  }
  for (const auto& e : identity_registry()) {
    if (e.name == name) return e.check(f, s, options);
  }
  fail(ErrorKind::kLookup, "unknown identity '" + raw_name + "'");
}

inline IdentityReport verify(const std::string& name, std::uint64_t n, const SParam& s,
                             const VerifyOptions& options = {}) {
  return verify(name, factorize(n), s, options);
}

inline IdentityReport verify_custom(const LocalWeight& g, const Factorization& f, const SParam& s,
                                    double tol = kDefaultRelTol) {
  return detail::check_custom(g, "custom:" + g.name, f, s, tol);
}

// Verifies every n in [lo, hi]. Work is split into `parallelism` contiguous
// chunks; results are concatenated in chunk order, so the output is the
// same for every thread count.
inline std::vector<IdentityReport> verify_range(const std::string& name, std::uint64_t lo,
                                                std::uint64_t hi, const SParam& s,
                                                const VerifyOptions& options = {},
                                                unsigned parallelism = 1) {
  if (lo < 1 || lo > hi) fail(ErrorKind::kDomain, "range must satisfy 1 <= lo <= hi");
  if (parallelism < 1) fail(ErrorKind::kDomain, "parallelism must be >= 1");
  if (!is_known_identity(name, options.seed)) {
    fail(ErrorKind::kLookup, "unknown identity '" + name + "'");
  }
  std::optional<SpfTable> table;
  if (hi >= 2 && hi <= kDefaultSpfLimit) table.emplace(hi);
  const SpfTable* hint = table ? &*table : nullptr;

  const std::uint64_t count = hi - lo + 1;
  const std::uint64_t chunks = std::min<std::uint64_t>(parallelism, count);
  std::vector<std::vector<IdentityReport>> parts(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    try {
      const std::uint64_t begin = lo + count * c / chunks;
      const std::uint64_t end = lo + count * (c + 1) / chunks;
      parts[c].reserve(end - begin);
      for (std::uint64_t n = begin; n < end; ++n) {
        parts[c].push_back(verify(name, factorize(n, hint), s, options));
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chunks == 1) {
    run_chunk(0);
  } else {
    std::vector<std::jthread> workers;
    for (std::uint64_t c = 0; c < chunks; ++c) workers.emplace_back(run_chunk, c);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<IdentityReport> out;
  out.reserve(count);
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

struct VerifySummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  double max_discrepancy = 0.0;
};

inline VerifySummary summarize(const std::vector<IdentityReport>& reports) {
  VerifySummary s;
  for (const auto& r : reports) {
    ++s.total;
    if (r.passed) ++s.passed;
    s.max_discrepancy = std::max(s.max_discrepancy, r.abs_discrepancy);
  }
  return s;
}

}  // namespace divsum
