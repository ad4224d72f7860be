#pragma once

// Integer substrate: factorization, smallest-prime-factor sieve, divisor
// enumeration and the classical multiplicative functions.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "divsum/errors.hpp"

namespace divsum {

// Largest n accepted by factorize. Everything above is a capability error.
inline constexpr std::uint64_t kMaxFactorable = (std::uint64_t{1} << 63) - 1;

// No n below 2^64 has more than 15 distinct prime factors.
inline constexpr std::size_t kMaxDistinctPrimes = 15;

// Entries allowed in an SpfTable (uint32 each, so ~400 MB at the cap).
inline constexpr std::uint64_t kSpfMemoryBudget = 100'000'000;

inline constexpr std::uint64_t kDefaultSpfLimit = 10'000'000;

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t limit,
                        std::uint64_t& out) {
  auto wide = static_cast<unsigned __int128>(a) * b;
  if (wide > limit) return false;
  out = static_cast<std::uint64_t>(wide);
  return true;
}

}  // namespace detail

// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                          1795265022ull}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class Factorization {
 public:
  Factorization() = default;

  // Validates and recomposes. Primes must be strictly increasing, prime,
  // with positive exponents, and the product must stay below 2^63.
  static Factorization from_prime_powers(std::vector<PrimePower> factors) {
    std::uint64_t n = 1;
    std::uint64_t previous = 1;
    for (const auto& [p, e] : factors) {
      if (p <= previous) fail(ErrorKind::kDomain, "primes must be strictly increasing");
      if (!is_prime(p)) fail(ErrorKind::kDomain, std::to_string(p) + " is not prime");
      if (e < 1) fail(ErrorKind::kDomain, "exponents must be positive");
      for (int i = 0; i < e; ++i) {
        if (!detail::checked_mul(n, p, kMaxFactorable, n)) {
          fail(ErrorKind::kCapability, "product exceeds 2^63 - 1");
        }
      }
      previous = p;
    }
    return Factorization(n, std::move(factors));
  }

  std::uint64_t n() const { return n_; }
  std::span<const PrimePower> factors() const { return factors_; }
  std::size_t omega() const { return factors_.size(); }

  bool is_squarefree() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  friend class FactorizationBuilder;

  Factorization(std::uint64_t n, std::vector<PrimePower> factors)
      : n_(n), factors_(std::move(factors)) {}

  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

// Trusted construction for routines that already produced canonical factors.
class FactorizationBuilder {
 public:
  static Factorization make(std::uint64_t n, std::vector<PrimePower> factors) {
    return Factorization(n, std::move(factors));
  }
};

// Linear sieve; spf[m] is the smallest prime factor of m for 2 <= m <= limit.
// Immutable once built.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) fail(ErrorKind::kDomain, "spf table limit must be >= 2");
    if (limit > kSpfMemoryBudget) {
      fail(ErrorKind::kResource, "spf table limit " + std::to_string(limit) +
                                     " exceeds memory budget of " +
                                     std::to_string(kSpfMemoryBudget));
    }
    spf_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes_) {
        std::uint64_t composite = static_cast<std::uint64_t>(p) * i;
        if (p > spf_[i] || composite > limit) break;
        spf_[composite] = p;
      }
    }
  }

  std::uint64_t limit() const { return limit_; }

  std::uint32_t spf(std::uint64_t m) const {
    if (m < 2 || m > limit_) fail(ErrorKind::kDomain, "spf index out of range");
    return spf_[m];
  }

  bool is_prime(std::uint64_t m) const { return m >= 2 && m <= limit_ && spf_[m] == m; }

  // All primes <= limit, ascending.
  std::span<const std::uint32_t> primes() const { return primes_; }

  Factorization factorize(std::uint64_t n) const {
    if (n == 0) fail(ErrorKind::kDomain, "cannot factorize 0");
    if (n > limit_) fail(ErrorKind::kDomain, "n exceeds spf table limit");
    std::vector<PrimePower> factors;
    std::uint64_t m = n;
    while (m > 1) {
      std::uint32_t p = spf_[m];
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
    return FactorizationBuilder::make(n, std::move(factors));
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

inline SpfTable build_spf_table(std::uint64_t limit) { return SpfTable(limit); }

namespace detail {

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n.
inline std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace detail

// Canonical factorization of n. Uses the hint table when n fits in it,
// otherwise trial division by small primes followed by Miller-Rabin and
// Pollard-Brent. The result is always checked by recomposition.
inline Factorization factorize(std::uint64_t n, const SpfTable* hint = nullptr) {
  if (n == 0) fail(ErrorKind::kDomain, "cannot factorize 0");
  if (n > kMaxFactorable) fail(ErrorKind::kCapability, "n exceeds 2^63 - 1");
  if (hint != nullptr && n <= hint->limit()) return hint->factorize(n);

  std::vector<std::uint64_t> primes;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  detail::split_into(m, primes);
  std::sort(primes.begin(), primes.end());

  std::vector<PrimePower> factors;
  std::uint64_t check = 1;
  for (std::uint64_t p : primes) {
    if (!factors.empty() && factors.back().prime == p) {
      ++factors.back().exponent;
    } else {
      factors.push_back({p, 1});
    }
    check *= p;
  }
  if (check != n) fail(ErrorKind::kConsistency, "factorization does not recompose");
  return FactorizationBuilder::make(n, std::move(factors));
}

inline Factorization factorize(const mpz_class& n, const SpfTable* hint = nullptr) {
  if (sgn(n) <= 0) fail(ErrorKind::kDomain, "n must be positive");
  if (n > mpz_class(static_cast<unsigned long>(kMaxFactorable))) {
    fail(ErrorKind::kCapability, "n exceeds 2^63 - 1");
  }
  return factorize(static_cast<std::uint64_t>(n.get_ui()), hint);
}

// One divisor during enumeration, with its own prime-power decomposition.
struct Divisor {
  std::uint64_t value = 1;
  std::array<PrimePower, kMaxDistinctPrimes> parts{};
  std::size_t count = 0;

  std::span<const PrimePower> factors() const { return {parts.data(), count}; }
};

// Visits every divisor via mixed-radix exponent counters. Order is not sorted.
template <typename Visitor>
void for_each_divisor(const Factorization& f, Visitor&& visit) {
  const auto factors = f.factors();
  const std::size_t k = factors.size();
  std::array<int, kMaxDistinctPrimes> exps{};
  std::array<std::uint64_t, kMaxDistinctPrimes> powers{};
  powers.fill(1);
  std::uint64_t value = 1;
  Divisor d;
  while (true) {
    d.value = value;
    d.count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (exps[i] > 0) d.parts[d.count++] = {factors[i].prime, exps[i]};
    }
    visit(static_cast<const Divisor&>(d));

    std::size_t i = 0;
    for (; i < k; ++i) {
      if (exps[i] < factors[i].exponent) {
        ++exps[i];
        powers[i] *= factors[i].prime;
        value *= factors[i].prime;
        break;
      }
      value /= powers[i];
      exps[i] = 0;
      powers[i] = 1;
    }
    if (i == k) break;
  }
}

// Visits the 2^omega squarefree divisors, one per subset of distinct primes.
template <typename Visitor>
void for_each_squarefree_divisor(const Factorization& f, Visitor&& visit) {
  const auto factors = f.factors();
  const std::size_t k = factors.size();
  Divisor d;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    d.value = 1;
    d.count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        d.value *= factors[i].prime;
        d.parts[d.count++] = {factors[i].prime, 1};
      }
    }
    visit(static_cast<const Divisor&>(d));
  }
}

inline std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out;
  for_each_divisor(f, [&](const Divisor& d) { out.push_back(d.value); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint64_t> squarefree_divisors(const Factorization& f) {
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << f.omega());
  for_each_squarefree_divisor(f, [&](const Divisor& d) { out.push_back(d.value); });
  std::sort(out.begin(), out.end());
  return out;
}

inline int mobius(const Factorization& f) {
  if (!f.is_squarefree()) return 0;
  return f.omega() % 2 == 0 ? 1 : -1;
}

inline int mobius(std::span<const PrimePower> factors) {
  for (const auto& pp : factors) {
    if (pp.exponent > 1) return 0;
  }
  return factors.size() % 2 == 0 ? 1 : -1;
}

// phi(n) = prod p^(a-1) (p - 1).
inline std::uint64_t totient(std::span<const PrimePower> factors) {
  std::uint64_t result = 1;
  for (const auto& [p, e] : factors) {
    result *= p - 1;
    for (int i = 1; i < e; ++i) result *= p;
  }
  return result;
}

inline std::uint64_t totient(const Factorization& f) { return totient(f.factors()); }

// sigma(n) = prod (p^(a+1) - 1) / (p - 1). Can exceed 64 bits near 2^63.
inline mpz_class sigma(std::span<const PrimePower> factors) {
  mpz_class result = 1;
  for (const auto& [p, e] : factors) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), p, static_cast<unsigned long>(e) + 1);
    result *= (power - 1) / (p - 1);
  }
  return result;
}

inline mpz_class sigma(const Factorization& f) { return sigma(f.factors()); }

inline std::uint64_t radical(const Factorization& f) {
  std::uint64_t r = 1;
  for (const auto& pp : f.factors()) r *= pp.prime;
  return r;
}

inline Factorization radical_factorization(const Factorization& f) {
  std::vector<PrimePower> factors;
  factors.reserve(f.omega());
  for (const auto& pp : f.factors()) factors.push_back({pp.prime, 1});
  return FactorizationBuilder::make(radical(f), std::move(factors));
}

}  // namespace divsum
