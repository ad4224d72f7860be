#pragma once

// Partial zeta functions, sigma local factors, the series reference for
// zeta(s) and truncated infinite Euler products.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "divsum/arith.hpp"
#include "divsum/value.hpp"

namespace divsum {

inline constexpr int kMaxTruncationDepth = 1000;
inline constexpr std::uint64_t kMaxPrimeBound = 100'000'000;
inline constexpr double kMaxZetaTerms = 2e8;

// zeta_p(s) = 1 / (1 - p^-s).
inline ArithValue local_zeta(std::uint64_t p, const SParam& s) {
  if (s.is_zero()) fail(ErrorKind::kSingularity, "zeta_p(s) has a pole at s = 0");
  return (ArithValue::integer(1) - prime_power_s(p, s)).inverse();
}

// zeta_n(s) = prod_{p | n} 1 / (1 - p^-s); zeta_1(s) = 1.
inline ArithValue partial_zeta(const Factorization& f, const SParam& s) {
  ArithValue value = ArithValue::integer(1);
  if (f.omega() > 0 && s.is_zero()) {
    fail(ErrorKind::kSingularity, "partial zeta has a pole at s = 0");
  }
  for (const auto& pp : f.factors()) value *= local_zeta(pp.prime, s);
  return value;
}

struct SigmaClosed {};
struct SigmaTruncated {
  int depth = 0;
};

// Local generating factor sum_k sigma(p^k) p^(-ks).
// Closed form 1 / ((1 - p^-s)(1 - p^(1-s))) has poles at s = 0 and s = 1.
inline ArithValue sigma_local_factor(std::uint64_t p, const SParam& s, SigmaClosed) {
  if (s.as_double() == 0.0 || s.as_double() == 1.0) {
    fail(ErrorKind::kSingularity, "sigma local factor is singular at s = " + s.value_string());
  }
  return (ArithValue::integer(1) - prime_power_s(p, s)).inverse() *
         (ArithValue::integer(1) - prime_power_s(p, s.shifted(-1))).inverse();
}

inline ArithValue sigma_local_factor(std::uint64_t p, const SParam& s, SigmaTruncated t) {
  if (t.depth < 0) fail(ErrorKind::kDomain, "truncation depth must be >= 0");
  if (p < 2) fail(ErrorKind::kDomain, "p must be >= 2");
  const ArithValue step = prime_power_s(p, s);
  ArithValue sum = ArithValue::integer(0);
  ArithValue scale = ArithValue::integer(1);  // p^(-ks)
  mpz_class sigma_pk = 1;                     // sigma(p^k)
  mpz_class pk = 1;
  for (int k = 0; k <= t.depth; ++k) {
    sum += ArithValue(sigma_pk) * scale;
    pk *= static_cast<unsigned long>(p);
    sigma_pk += pk;
    scale *= step;
  }
  return sum;
}

// Upper bound on sum_{k > depth} (k+1) p^(k(1-s)), which dominates the
// tail of the truncated sigma factor because sigma(p^k) <= (k+1) p^k.
// Requires s > 1.
inline double sigma_tail_bound(std::uint64_t p, double s, int depth) {
  if (!(s > 1.0)) fail(ErrorKind::kConvergenceDomain, "sigma tail bound requires s > 1");
  const double x = std::pow(static_cast<double>(p), 1.0 - s);
  const double k1 = depth + 1.0;
  return std::pow(x, k1) * ((k1 + 1.0) - k1 * x) / ((1.0 - x) * (1.0 - x));
}

// Smallest depth K <= kMaxTruncationDepth such that truncating every local
// sigma factor of n at K moves the product over p | n by at most tol.
// Since truncated <= closed termwise,
//   |prod closed - prod truncated| <= sum_p tail_p * prod_{q != p} closed_q.
inline int choose_truncation_depth(const Factorization& f, double s, double tol) {
  if (!(s > 1.0)) fail(ErrorKind::kConvergenceDomain, "truncation requires s > 1");
  if (!(tol > 0)) fail(ErrorKind::kDomain, "tol must be positive");
  double closed_product = 1.0;
  for (const auto& pp : f.factors()) {
    double pd = static_cast<double>(pp.prime);
    closed_product /= (1.0 - std::pow(pd, -s)) * (1.0 - std::pow(pd, 1.0 - s));
  }
  for (int depth = 0; depth <= kMaxTruncationDepth; ++depth) {
    double bound = 0.0;
    for (const auto& pp : f.factors()) {
      double pd = static_cast<double>(pp.prime);
      double closed = 1.0 / ((1.0 - std::pow(pd, -s)) * (1.0 - std::pow(pd, 1.0 - s)));
      bound += sigma_tail_bound(pp.prime, s, depth) * closed_product / closed;
    }
    if (bound < tol) return depth;
  }
  return kMaxTruncationDepth;
}

struct ZetaReference {
  double value = 0.0;
  std::uint64_t terms = 0;
  double error_bound = 0.0;
};

// zeta(s) = sum_{k<=N} k^-s + tail, where the tail lies between the
// integrals from N+1 and from N of x^-s. The midpoint of that bracket is
// returned, so the error is at most half its width, which N makes <= tol.
inline ZetaReference zeta_reference_detailed(double s, double tol) {
  if (!(s > 1.0)) fail(ErrorKind::kConvergenceDomain, "zeta series requires s > 1");
  if (!(tol > 0)) fail(ErrorKind::kDomain, "tol must be positive");
  auto half_width = [s](double n) {
    return (std::pow(n, 1.0 - s) - std::pow(n + 1.0, 1.0 - s)) / (2.0 * (s - 1.0));
  };
  double n = std::max(1.0, std::ceil(std::pow(2.0 * tol, -1.0 / s)));
  while (half_width(n) > tol) n = std::ceil(n * 1.25);
  if (n > kMaxZetaTerms) {
    fail(ErrorKind::kCapability, "tolerance needs more than " +
                                     std::to_string(static_cast<std::uint64_t>(kMaxZetaTerms)) +
                                     " series terms");
  }
  const auto terms = static_cast<std::uint64_t>(n);

  double sum = 0.0;
  for (std::uint64_t k = terms; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double upper_tail = std::pow(n, 1.0 - s) / (s - 1.0);
  const double lower_tail = std::pow(n + 1.0, 1.0 - s) / (s - 1.0);
  return {sum + 0.5 * (upper_tail + lower_tail), terms, half_width(n)};
}

inline ArithValue zeta_reference(double s, double tol) {
  return ArithValue(zeta_reference_detailed(s, tol).value);
}

struct GlobalProduct {
  double value = 0.0;
  std::uint64_t prime_bound = 0;
  std::size_t primes_used = 0;
  // The missing factor prod_{p > P} (1 + p^-s) is at most
  // exp(sum_{k > P} k^-s) <= exp(P^(1-s) / (s-1)); this is the resulting
  // absolute gap bound value * (exp(...) - 1).
  double tail_bound = 0.0;
};

// prod_{p <= P} (1 + p^-s), multiplied in ascending prime order.
inline GlobalProduct truncated_global_product(std::uint64_t prime_bound, double s) {
  if (!(s > 1.0)) fail(ErrorKind::kConvergenceDomain, "infinite product requires s > 1");
  if (prime_bound < 2) fail(ErrorKind::kDomain, "prime bound must be >= 2");
  if (prime_bound > kMaxPrimeBound) {
    fail(ErrorKind::kResource, "prime bound exceeds " + std::to_string(kMaxPrimeBound));
  }
  const SpfTable table(prime_bound);
  GlobalProduct out;
  out.prime_bound = prime_bound;
  out.value = 1.0;
  for (std::uint32_t p : table.primes()) {
    out.value *= 1.0 + std::pow(static_cast<double>(p), -s);
  }
  out.primes_used = table.primes().size();
  const double exponent = std::pow(static_cast<double>(prime_bound), 1.0 - s) / (s - 1.0);
  out.tail_bound = out.value * std::expm1(exponent);
  return out;
}

}  // namespace divsum
