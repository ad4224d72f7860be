#pragma once

// Selberg sieve densities J and weights lambda_d over the squarefree
// divisors of a modulus n, plus the finite quadratic form
//   Q(X, R) = sum_{m <= X} (sum_{d | m, d <= R} lambda_d)^2.
//
// The sieve modulus is the squarefree kernel rad(n): weights live on
// squarefree d | n, and lambda_d = mu(d) J_{rad(n)/d} / J_{rad(n)}. For
// squarefree n this is the literal mu(d) J_{n/d} / J_n. For n with a square
// factor the literal quotient n/d keeps primes of d (J_{12/2} = J_6 = J_12),
// which breaks the product form below, so the kernel is used instead.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "divsum/arith.hpp"
#include "divsum/identities.hpp"
#include "divsum/value.hpp"

namespace divsum {

// h_s(p) = 1 / ((p-1) p^s).
inline ArithValue h_weight(std::uint64_t p, const SParam& s) {
  if (p < 2) fail(ErrorKind::kDomain, "h_weight requires p >= 2");
  return prime_power_s(p, s) / ArithValue::unsigned_integer(p - 1);
}

// J_n(s) = sum over squarefree d | n of prod_{p|d} h_s(p), by enumeration.
inline ArithValue J(const Factorization& f, const SParam& s) {
  ArithValue total = s.is_integer() ? ArithValue::integer(0) : ArithValue(0.0);
  for_each_squarefree_divisor(f, [&](const Divisor& d) {
    ArithValue term = ArithValue::integer(1);
    for (const auto& pp : d.factors()) term *= h_weight(pp.prime, s);
    total += term;
  });
  return total;
}

namespace detail {

inline Factorization require_squarefree_divisor(std::uint64_t d, const Factorization& n) {
  if (d == 0 || n.n() % d != 0) {
    fail(ErrorKind::kDomain, std::to_string(d) + " does not divide " + std::to_string(n.n()));
  }
  std::vector<PrimePower> parts;
  std::uint64_t rest = d;
  for (const auto& pp : n.factors()) {
    if (rest % pp.prime != 0) continue;
    rest /= pp.prime;
    if (rest % pp.prime == 0) fail(ErrorKind::kDomain, std::to_string(d) + " is not squarefree");
    parts.push_back({pp.prime, 1});
  }
  return FactorizationBuilder::make(d, std::move(parts));
}

// Primes of rad(n) that do not divide the squarefree d.
inline Factorization cofactor_in_kernel(const Factorization& n, const Factorization& d) {
  std::vector<PrimePower> parts;
  std::uint64_t value = 1;
  for (const auto& pp : n.factors()) {
    if (d.n() % pp.prime != 0) {
      parts.push_back({pp.prime, 1});
      value *= pp.prime;
    }
  }
  return FactorizationBuilder::make(value, std::move(parts));
}

}  // namespace detail

// lambda_d = mu(d) J_{rad(n)/d}(s) / J_{rad(n)}(s).
inline ArithValue lambda_ratio(std::uint64_t d, const Factorization& n, const SParam& s) {
  const Factorization fd = detail::require_squarefree_divisor(d, n);
  const Factorization cofactor = detail::cofactor_in_kernel(n, fd);
  return ArithValue::integer(mobius(fd)) * J(cofactor, s) / J(radical_factorization(n), s);
}

// lambda_d = mu(d) prod_{p|d} 1 / (1 + h_s(p)).
inline ArithValue lambda_product(const Factorization& d, const SParam& s) {
  if (!d.is_squarefree()) fail(ErrorKind::kDomain, std::to_string(d.n()) + " is not squarefree");
  ArithValue result = ArithValue::integer(mobius(d));
  for (const auto& pp : d.factors()) {
    result *= (ArithValue::integer(1) + h_weight(pp.prime, s)).inverse();
  }
  return result;
}

struct SieveWeights {
  std::uint64_t n = 1;
  SParam s = SParam::integer(0);
  std::map<std::uint64_t, ArithValue> J;       // J_m for every squarefree m | n
  std::map<std::uint64_t, ArithValue> lambda;  // lambda_d for every squarefree d | n
  std::map<std::uint64_t, int> mu;
  std::uint64_t radical_of_n = 1;

  const ArithValue& J_n() const { return J.at(radical_of_n); }
};

// J over the squarefree divisor lattice, one multiplication per subset:
// J[mask] = J[mask without its lowest prime] * (1 + h(lowest prime)).
// Lambdas come from the ratio form and are cross-checked against the
// product form.
inline SieveWeights weight_table(const Factorization& f, const SParam& s) {
  const auto primes = f.factors();
  const std::size_t k = primes.size();
  const std::size_t subsets = std::size_t{1} << k;

  std::vector<ArithValue> local;
  for (const auto& pp : primes) local.push_back(ArithValue::integer(1) + h_weight(pp.prime, s));

  std::vector<ArithValue> j_of(subsets, ArithValue::integer(1));
  std::vector<std::uint64_t> value_of(subsets, 1);
  std::vector<int> mu_of(subsets, 1);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & (mask - 1);
    j_of[mask] = j_of[rest] * local[low];
    value_of[mask] = value_of[rest] * primes[low].prime;
    mu_of[mask] = -mu_of[rest];
  }

  SieveWeights w;
  w.n = f.n();
  w.s = s;
  w.radical_of_n = value_of[subsets - 1];
  const ArithValue& j_n = j_of[subsets - 1];
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    const std::size_t complement = (subsets - 1) ^ mask;
    ArithValue lambda = ArithValue::integer(mu_of[mask]) * j_of[complement] / j_n;

    std::vector<PrimePower> parts;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) parts.push_back({primes[i].prime, 1});
    }
    const ArithValue check =
        lambda_product(FactorizationBuilder::make(value_of[mask], std::move(parts)), s);
    if (!approx_equal(lambda, check, kDefaultRelTol)) {
      fail(ErrorKind::kConsistency, "lambda ratio/product mismatch at d = " +
                                        std::to_string(value_of[mask]));
    }
    w.J.emplace(value_of[mask], j_of[mask]);
    w.lambda.emplace(value_of[mask], std::move(lambda));
    w.mu.emplace(value_of[mask], mu_of[mask]);
  }
  return w;
}

// Inner sums are accumulated by walking multiples of each indexed d <= R.
inline ArithValue quadratic_form_Q(std::uint64_t X, std::uint64_t R, const SieveWeights& w) {
  if (X < 1 || R < 1) fail(ErrorKind::kDomain, "Q needs X >= 1 and R >= 1");
  const bool exact = std::all_of(w.lambda.begin(), w.lambda.end(),
                                 [](const auto& kv) { return kv.second.is_exact(); });
  std::vector<ArithValue> inner(X + 1, exact ? ArithValue::integer(0) : ArithValue(0.0));
  for (const auto& [d, lambda] : w.lambda) {
    if (d > R || d > X) continue;
    for (std::uint64_t m = d; m <= X; m += d) inner[m] += lambda;
  }
  ArithValue q = exact ? ArithValue::integer(0) : ArithValue(0.0);
  for (std::uint64_t m = 1; m <= X; ++m) q += inner[m] * inner[m];
  return q;
}

struct DecayRow {
  std::uint64_t d = 1;
  std::vector<ArithValue> lambda;  // one entry per requested s, same order
};

// lambda_d for every squarefree d | n across the given s values.
inline std::vector<DecayRow> weight_decay_profile(const Factorization& f,
                                                  const std::vector<SParam>& s_values) {
  std::vector<DecayRow> rows;
  for (std::uint64_t d : squarefree_divisors(f)) rows.push_back({d, {}});
  for (const auto& s : s_values) {
    const auto w = weight_table(f, s);
    for (auto& row : rows) row.lambda.push_back(w.lambda.at(row.d));
  }
  return rows;
}

}  // namespace divsum
