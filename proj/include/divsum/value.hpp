#pragma once

// Scalar domain. Integer s keeps everything as exact rationals; real s
// switches to double. Mixing the two always yields a double.

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

#include "divsum/errors.hpp"

namespace divsum {

inline constexpr double kDefaultRelTol = 1e-12;

enum class Mode { kExact, kApprox };

constexpr std::string_view to_string(Mode m) { return m == Mode::kExact ? "exact" : "approx"; }

// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

class SParam {
 public:
  static SParam integer(long value) { return SParam(Mode::kExact, value, 0.0); }
  static SParam real(double value) {
    if (!std::isfinite(value)) fail(ErrorKind::kDomain, "s must be finite");
    return SParam(Mode::kApprox, 0, value);
  }

  bool is_integer() const { return mode_ == Mode::kExact; }
  Mode mode() const { return mode_; }
  long int_value() const { return int_; }
  double as_double() const { return is_integer() ? static_cast<double>(int_) : real_; }

  SParam shifted(long delta) const {
    return is_integer() ? integer(int_ + delta) : real(real_ + static_cast<double>(delta));
  }
  SParam scaled(long factor) const {
    return is_integer() ? integer(int_ * factor) : real(real_ * static_cast<double>(factor));
  }

  bool is_zero() const { return as_double() == 0.0; }

  std::string mode_name() const { return is_integer() ? "integer" : "real"; }
  std::string value_string() const {
    return is_integer() ? std::to_string(int_) : format_double(real_);
  }

 private:
  SParam(Mode mode, long i, double r) : mode_(mode), int_(i), real_(r) {}

  Mode mode_;
  long int_;
  double real_;
};

class ArithValue {
 public:
  ArithValue() : value_(mpq_class(0)) {}
  ArithValue(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }
  ArithValue(const mpz_class& z) : value_(mpq_class(z)) {}
  ArithValue(double x) : value_(x) {}

  static ArithValue integer(long v) { return ArithValue(mpq_class(v)); }
  static ArithValue unsigned_integer(std::uint64_t v) {
    return ArithValue(mpq_class(mpz_class(static_cast<unsigned long>(v))));
  }
  static ArithValue ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) fail(ErrorKind::kDomain, "division by zero");
    return ArithValue(mpq_class(mpz_class(static_cast<unsigned long>(num)),
                                mpz_class(static_cast<unsigned long>(den))));
  }

  Mode mode() const { return is_exact() ? Mode::kExact : Mode::kApprox; }
  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& exact() const { return std::get<mpq_class>(value_); }

  double to_double() const {
    return is_exact() ? exact().get_d() : std::get<double>(value_);
  }
  ArithValue to_approx() const { return ArithValue(to_double()); }

  bool is_zero() const { return is_exact() ? sgn(exact()) == 0 : std::get<double>(value_) == 0.0; }
  int sign() const {
    if (is_exact()) return sgn(exact());
    double x = std::get<double>(value_);
    return (x > 0) - (x < 0);
  }

  ArithValue abs() const {
    if (is_exact()) return ArithValue(mpq_class(::abs(exact())));
    return ArithValue(std::fabs(std::get<double>(value_)));
  }

  ArithValue operator-() const {
    if (is_exact()) return ArithValue(mpq_class(-exact()));
    return ArithValue(-std::get<double>(value_));
  }

  ArithValue inverse() const { return ArithValue::integer(1) / *this; }

  // "num/den" for exact values (just "num" when den = 1), shortest
  // round-trip decimal otherwise.
  std::string to_string() const {
    return is_exact() ? exact().get_str() : format_double(std::get<double>(value_));
  }

  friend ArithValue operator+(const ArithValue& a, const ArithValue& b) {
    if (a.is_exact() && b.is_exact()) return ArithValue(mpq_class(a.exact() + b.exact()));
    return ArithValue(a.to_double() + b.to_double());
  }
  friend ArithValue operator-(const ArithValue& a, const ArithValue& b) {
    if (a.is_exact() && b.is_exact()) return ArithValue(mpq_class(a.exact() - b.exact()));
    return ArithValue(a.to_double() - b.to_double());
  }
  friend ArithValue operator*(const ArithValue& a, const ArithValue& b) {
    if (a.is_exact() && b.is_exact()) return ArithValue(mpq_class(a.exact() * b.exact()));
    return ArithValue(a.to_double() * b.to_double());
  }
  friend ArithValue operator/(const ArithValue& a, const ArithValue& b) {
    if (b.is_zero()) fail(ErrorKind::kDomain, "division by zero");
    if (a.is_exact() && b.is_exact()) return ArithValue(mpq_class(a.exact() / b.exact()));
    return ArithValue(a.to_double() / b.to_double());
  }

  ArithValue& operator+=(const ArithValue& o) {
    if (is_exact() && o.is_exact()) {
      std::get<mpq_class>(value_) += o.exact();
    } else {
      value_ = to_double() + o.to_double();
    }
    return *this;
  }
  ArithValue& operator*=(const ArithValue& o) {
    if (is_exact() && o.is_exact()) {
      std::get<mpq_class>(value_) *= o.exact();
    } else {
      value_ = to_double() * o.to_double();
    }
    return *this;
  }

  // Structural equality: same mode and same value. Use approx_equal for
  // tolerance-based comparison.
  friend bool operator==(const ArithValue& a, const ArithValue& b) {
    if (a.is_exact() != b.is_exact()) return false;
    if (a.is_exact()) return a.exact() == b.exact();
    return std::get<double>(a.value_) == std::get<double>(b.value_);
  }

  friend bool operator<(const ArithValue& a, const ArithValue& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
    return a.to_double() < b.to_double();
  }

 private:
  std::variant<mpq_class, double> value_;
};

inline mpz_class pow_u64(std::uint64_t base, unsigned long exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

// p^(-s): exact when s is an integer, exp(-s ln p) otherwise.
inline ArithValue prime_power_s(std::uint64_t p, const SParam& s) {
  if (p < 2) fail(ErrorKind::kDomain, "prime_power_s requires p >= 2");
  if (!s.is_integer()) {
    return ArithValue(std::exp(-s.as_double() * std::log(static_cast<double>(p))));
  }
  long k = s.int_value();
  if (k >= 0) return ArithValue(mpq_class(mpz_class(1), pow_u64(p, static_cast<unsigned long>(k))));
  return ArithValue(mpq_class(pow_u64(p, static_cast<unsigned long>(-k))));
}

// Same contract for an arbitrary positive base (d^(-s) for composite d).
inline ArithValue power_neg_s(std::uint64_t base, const SParam& s) {
  if (base == 1) return ArithValue::integer(1);
  return prime_power_s(base, s);
}

// Exact/exact compares rationals for identity and ignores rel_tol.
// Otherwise |a - b| <= rel_tol * max(1, |a|, |b|).
inline bool approx_equal(const ArithValue& a, const ArithValue& b, double rel_tol) {
  if (!(rel_tol > 0)) fail(ErrorKind::kDomain, "rel_tol must be positive");
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  double x = a.to_double();
  double y = b.to_double();
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  return std::fabs(x - y) <= rel_tol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

inline double abs_discrepancy(const ArithValue& a, const ArithValue& b) {
  if (a.is_exact() && b.is_exact()) return mpq_class(::abs(mpq_class(a.exact() - b.exact()))).get_d();
  return std::fabs(a.to_double() - b.to_double());
}

}  // namespace divsum
