#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "divsum/identities.hpp"
#include "divsum/value.hpp"

namespace divsum {

// Outcome of checking one identity at one (n, s).
struct IdentityReport {
  std::string identity;
  std::uint64_t n = 1;
  SParam s = SParam::integer(0);
  ArithValue lhs;
  ArithValue rhs;
  Mode mode = Mode::kExact;
  bool passed = false;
  double abs_discrepancy = 0.0;
  // Which divisor enumeration produced lhs; empty when lhs is not a divisor sum.
  std::optional<Enumeration> enumeration;
};

// Exact/exact pairs are compared as rationals and tol is ignored.
inline IdentityReport make_report(std::string identity, std::uint64_t n, const SParam& s,
                                  ArithValue lhs, ArithValue rhs, double tol,
                                  std::optional<Enumeration> enumeration) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.n = n;
  r.s = s;
  r.mode = lhs.is_exact() && rhs.is_exact() ? Mode::kExact : Mode::kApprox;
  r.passed = approx_equal(lhs, rhs, tol);
  r.abs_discrepancy = abs_discrepancy(lhs, rhs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.enumeration = enumeration;
  return r;
}

}  // namespace divsum
