#pragma once

// Identities tying finite divisor sums to partial zeta functions.

#include <optional>

#include "divsum/identities.hpp"
#include "divsum/report.hpp"
#include "divsum/zeta.hpp"

namespace divsum {

struct ValuePair {
  ArithValue lhs;
  ArithValue rhs;
};

// sum_{d|n} mu^2(d) d^-s  vs  zeta_n(s) / zeta_n(2s).
inline ValuePair zeta_ratio_identity_check(const Factorization& f, const SParam& s) {
  if (s.is_zero()) fail(ErrorKind::kSingularity, "zeta ratio identity needs s != 0");
  return {squarefree_dirichlet_sum(f, s), partial_zeta(f, s) / partial_zeta(f, s.scaled(2))};
}

// zeta_n(1)  vs  n / phi(n).
inline ValuePair zeta_totient_identity(const Factorization& f) {
  return {partial_zeta(f, SParam::integer(1)), ArithValue::ratio(f.n(), totient(f))};
}

// zeta_n(1) zeta_n(s) = n zeta_n(s) / phi(n)  vs  prod 1/((1 - p^-1)(1 - p^-s)).
inline ValuePair zeta_product_identity(const Factorization& f, const SParam& s) {
  if (s.is_zero()) fail(ErrorKind::kSingularity, "zeta product identity needs s != 0");
  ArithValue lhs = ArithValue::ratio(f.n(), totient(f)) * partial_zeta(f, s);
  ArithValue rhs = ArithValue::integer(1);
  const ArithValue one = ArithValue::integer(1);
  for (const auto& pp : f.factors()) {
    rhs *= ((one - ArithValue::ratio(1, pp.prime)) * (one - prime_power_s(pp.prime, s))).inverse();
  }
  return {lhs, rhs};
}

// prod_{p|n} closed sigma local factors  vs  zeta_n(s) zeta_n(s-1).
inline ValuePair sigma_closed_identity(const Factorization& f, const SParam& s) {
  if (!(s.as_double() > 1.0)) {
    fail(ErrorKind::kConvergenceDomain, "sigma/partial zeta identity requires s > 1");
  }
  ArithValue lhs = ArithValue::integer(1);
  for (const auto& pp : f.factors()) lhs *= sigma_local_factor(pp.prime, s, SigmaClosed{});
  return {lhs, partial_zeta(f, s) * partial_zeta(f, s.shifted(-1))};
}

// Truncated sigma local factors at depth K (chosen from the tail bound when
// not given) against zeta_n(s) zeta_n(s-1) within tol. The closed factors are
// also compared with the zeta product; either mismatch fails the report.
inline IdentityReport sigma_partial_zeta_check(const Factorization& f, const SParam& s,
                                               std::optional<int> depth, double tol) {
  const auto closed = sigma_closed_identity(f, s);
  const int k = depth.value_or(choose_truncation_depth(f, s.as_double(), tol));
  ArithValue truncated = ArithValue::integer(1);
  for (const auto& pp : f.factors()) {
    truncated *= sigma_local_factor(pp.prime, s, SigmaTruncated{k});
  }
  auto report = make_report("sigma_partial", f.n(), s, truncated.to_approx(), closed.rhs, tol,
                            std::nullopt);
  if (!approx_equal(closed.lhs, closed.rhs, tol)) report.passed = false;
  return report;
}

}  // namespace divsum
