#pragma once

// Divisor-sum and squarefree Euler-product evaluators, the local-weight
// construction F(n) = prod_{p|n} (1 + g(p)) = sum_{d|n} mu^2(d) prod_{p|d} g(p),
// and the named identities built on top of it.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "divsum/arith.hpp"
#include "divsum/value.hpp"
#include "divsum/zeta.hpp"

namespace divsum {

enum class Enumeration { kSquarefree, kFull };

constexpr std::string_view to_string(Enumeration e) {
  return e == Enumeration::kSquarefree ? "squarefree" : "full";
}

// A prime-indexed weight g(p). g may depend on s; it must be deterministic.
struct LocalWeight {
  std::string name;
  std::function<ArithValue(std::uint64_t p, const SParam& s)> g;
  std::string description;
};

namespace weights {

inline LocalWeight inverse_p_minus_one() {
  return {"inv_p_minus_1",
          [](std::uint64_t p, const SParam&) { return ArithValue::ratio(1, p - 1); },
          "g(p) = 1/(p-1); sum side is sum mu^2(d)/phi(d)"};
}

inline LocalWeight inverse_p() {
  return {"inv_p", [](std::uint64_t p, const SParam&) { return ArithValue::ratio(1, p); },
          "g(p) = 1/p; sum side is sum mu^2(d)/d"};
}

inline LocalWeight p_pow_neg_s() {
  return {"p_pow_neg_s", [](std::uint64_t p, const SParam& s) { return prime_power_s(p, s); },
          "g(p) = p^-s; sum side is sum mu^2(d)/d^s"};
}

// h_s(p) = 1 / ((p-1) p^s), the weight behind the generalized Dineva sum.
inline LocalWeight generalized_dineva_h() {
  return {"gdineva_h",
          [](std::uint64_t p, const SParam& s) {
            return prime_power_s(p, s) / ArithValue::unsigned_integer(p - 1);
          },
          "g(p) = 1/((p-1) p^s); sum side is sum mu^2(d)/(phi(d) d^s)"};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// g(p) = a/b with a in [-20, 20], b in [1, 20], a pure function of (seed, p).
inline LocalWeight seeded_rational(std::uint64_t seed) {
  return {"random:" + std::to_string(seed),
          [seed](std::uint64_t p, const SParam&) {
            const std::uint64_t h = detail::splitmix64(seed ^ detail::splitmix64(p));
            const long num = static_cast<long>(h % 41) - 20;
            const long den = static_cast<long>((h >> 32) % 20) + 1;
            return ArithValue(mpq_class(num, den));
          },
          "seeded random rational g(p)"};
}

inline std::vector<LocalWeight> builtin() {
  return {inverse_p_minus_one(), inverse_p(), p_pow_neg_s(), generalized_dineva_h()};
}

}  // namespace weights

// sum_{d | n} w(d) d^-s. With kSquarefree only squarefree d are visited,
// which is only equivalent when w vanishes off squarefree divisors.
template <typename Weight>
ArithValue divisor_sum(const Factorization& f, Weight&& weight, const SParam& s,
                       Enumeration enumeration = Enumeration::kFull) {
  ArithValue total = ArithValue::integer(0);
  if (!s.is_integer()) total = ArithValue(0.0);
  auto visit = [&](const Divisor& d) { total += weight(d) * power_neg_s(d.value, s); };
  if (enumeration == Enumeration::kSquarefree) {
    for_each_squarefree_divisor(f, visit);
  } else {
    for_each_divisor(f, visit);
  }
  return total;
}

// prod_{p | n} (1 + g(p)).
inline ArithValue squarefree_euler_product(const Factorization& f, const LocalWeight& g,
                                           const SParam& s) {
  ArithValue product = ArithValue::integer(1);
  for (const auto& pp : f.factors()) product *= ArithValue::integer(1) + g.g(pp.prime, s);
  return product;
}

struct IdentityPair {
  ArithValue sum_side;
  ArithValue product_side;
};

// Sum side expands the product subset by subset; product side multiplies
// the local factors.
inline IdentityPair identity_pair(const Factorization& f, const LocalWeight& g, const SParam& s) {
  std::vector<ArithValue> local;
  local.reserve(f.omega());
  for (const auto& pp : f.factors()) local.push_back(g.g(pp.prime, s));

  ArithValue sum = ArithValue::integer(0);
  const std::size_t k = f.omega();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    ArithValue term = ArithValue::integer(1);
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) term *= local[i];
    }
    sum += term;
  }
  return {sum, squarefree_euler_product(f, g, s)};
}

// phi(d) for squarefree d straight from its primes.
inline std::uint64_t squarefree_totient(const Divisor& d) {
  std::uint64_t phi = 1;
  for (const auto& pp : d.factors()) phi *= pp.prime - 1;
  return phi;
}

// sum_{d | n} mu^2(d) / phi(d); equals n / phi(n).
inline ArithValue dineva(const Factorization& f) {
  return divisor_sum(
      f, [](const Divisor& d) { return ArithValue::ratio(1, squarefree_totient(d)); },
      SParam::integer(0), Enumeration::kSquarefree);
}

inline ArithValue dineva_closed_form(const Factorization& f) {
  return ArithValue::ratio(f.n(), totient(f));
}

enum class GdForm { kDivisorSum, kProduct, kAlternate, kZetaLocal };

constexpr std::string_view to_string(GdForm form) {
  switch (form) {
    case GdForm::kDivisorSum: return "divisor_sum";
    case GdForm::kProduct: return "product";
    case GdForm::kAlternate: return "alternate";
    case GdForm::kZetaLocal: return "zeta_local";
  }
  return "?";
}

// sum_{d|n} mu^2(d) / (phi(d) d^s) and its three product rewritings:
//   product    prod (1 + 1/((p-1) p^s))
//   alternate  prod (1 - p^-1 + p^-(s+1)) / (1 - p^-1)
//   zeta_local prod (1 + zeta_p(1) / p^(s+1))
inline ArithValue generalized_dineva(const Factorization& f, const SParam& s, GdForm form) {
  const ArithValue one = ArithValue::integer(1);
  ArithValue result = s.is_integer() ? one : ArithValue(1.0);
  switch (form) {
    case GdForm::kDivisorSum:
      return divisor_sum(
          f, [](const Divisor& d) { return ArithValue::ratio(1, squarefree_totient(d)); }, s,
          Enumeration::kSquarefree);
    case GdForm::kProduct:
      for (const auto& pp : f.factors()) {
        result *= one + prime_power_s(pp.prime, s) / ArithValue::unsigned_integer(pp.prime - 1);
      }
      return result;
    case GdForm::kAlternate:
      for (const auto& pp : f.factors()) {
        const ArithValue inv_p = ArithValue::ratio(1, pp.prime);
        result *= (one - inv_p + prime_power_s(pp.prime, s.shifted(1))) / (one - inv_p);
      }
      return result;
    case GdForm::kZetaLocal:
      for (const auto& pp : f.factors()) {
        result *= one + local_zeta(pp.prime, SParam::integer(1)) *
                            prime_power_s(pp.prime, s.shifted(1));
      }
      return result;
  }
  fail(ErrorKind::kDomain, "unknown generalized Dineva form");
}

// sum_{d|n} mu(d) / d^s; equals prod (1 - p^-s) = 1 / zeta_n(s).
inline ArithValue mobius_divisor_sum(const Factorization& f, const SParam& s) {
  return divisor_sum(
      f, [](const Divisor& d) { return ArithValue::integer(mobius(d.factors())); }, s,
      Enumeration::kSquarefree);
}

inline ArithValue mobius_product(const Factorization& f, const SParam& s) {
  ArithValue result = ArithValue::integer(1);
  for (const auto& pp : f.factors()) result *= ArithValue::integer(1) - prime_power_s(pp.prime, s);
  return result;
}

// sum_{d|n} mu^2(d) / d^s.
inline ArithValue squarefree_dirichlet_sum(const Factorization& f, const SParam& s) {
  return divisor_sum(
      f, [](const Divisor&) { return ArithValue::integer(1); }, s, Enumeration::kSquarefree);
}

inline ArithValue squarefree_dirichlet_product(const Factorization& f, const SParam& s) {
  return squarefree_euler_product(f, weights::p_pow_neg_s(), s);
}

// f(p^j) for a multiplicative f. f(p, 0) must be 1.
using LocalFunction = std::function<ArithValue(std::uint64_t p, int j)>;

namespace local_functions {

inline LocalFunction mobius() {
  return [](std::uint64_t, int j) { return ArithValue::integer(j == 0 ? 1 : (j == 1 ? -1 : 0)); };
}

inline LocalFunction mobius_squared() {
  return [](std::uint64_t, int j) { return ArithValue::integer(j <= 1 ? 1 : 0); };
}

inline LocalFunction totient() {
  return [](std::uint64_t p, int j) {
    if (j == 0) return ArithValue::integer(1);
    return ArithValue(mpz_class(pow_u64(p, static_cast<unsigned long>(j - 1)) * (p - 1)));
  };
}

inline LocalFunction sigma() {
  return [](std::uint64_t p, int j) {
    return ArithValue(mpz_class((pow_u64(p, static_cast<unsigned long>(j) + 1) - 1) / (p - 1)));
  };
}

}  // namespace local_functions

// prod_{p^k || n} sum_{j=0}^{k} f(p^j) / p^(js).
inline ArithValue multiplicative_dirichlet_sum(const Factorization& f, const LocalFunction& local,
                                               const SParam& s) {
  ArithValue product = ArithValue::integer(1);
  for (const auto& [p, k] : f.factors()) {
    if (local(p, 0) != ArithValue::integer(1)) {
      fail(ErrorKind::kContract, "local function must satisfy f(p^0) = 1 (p = " +
                                     std::to_string(p) + ")");
    }
    const ArithValue step = prime_power_s(p, s);
    ArithValue scale = ArithValue::integer(1);
    ArithValue factor = ArithValue::integer(0);
    for (int j = 0; j <= k; ++j) {
      factor += local(p, j) * scale;
      scale *= step;
    }
    product *= factor;
  }
  return product;
}

// sum_{d|n} phi(d); equals n.
inline ArithValue totient_sum_check(const Factorization& f) {
  ArithValue total = ArithValue::integer(0);
  for_each_divisor(f, [&](const Divisor& d) {
    total += ArithValue::unsigned_integer(totient(d.factors()));
  });
  return total;
}

}  // namespace divsum
