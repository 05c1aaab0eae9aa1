#pragma once

#include <gmpxx.h>

#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace phaseret {

/// A real number held either exactly, as a canonical rational p/q with q > 0
/// and gcd(p, q) = 1, or approximately, as a 64-bit float.
///
/// Arithmetic between two rationals stays exact. Any operation touching a
/// float operand promotes the result to float; callers that care about the
/// promotion inspect `is_exact()` on their inputs and outputs.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(mpq_class q);  // NOLINT(google-explicit-constructor)
  Scalar(double d) : value_(d) {}  // NOLINT(google-explicit-constructor)

  template <std::signed_integral I>
  Scalar(I v) : value_(mpq_class(static_cast<long>(v))) {}  // NOLINT

  template <std::unsigned_integral I>
  Scalar(I v) : value_(mpq_class(static_cast<unsigned long>(v))) {}  // NOLINT

  /// p/q; throws PreconditionError when q == 0.
  static Scalar ratio(long p, long q);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }

  /// The rational value. Throws PreconditionError for float scalars.
  const mpq_class& rational() const;

  double to_double() const;

  /// -1, 0 or +1. Float values within `tol` of zero count as zero.
  int sign(double tol = 0.0) const;
  bool is_zero(double tol = 0.0) const { return sign(tol) == 0; }

  Scalar abs() const;
  Scalar reciprocal() const;

  /// "p/q" (or "p") for rationals, shortest round-tripping decimal for floats.
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  // Comparisons are exact between rationals; otherwise plain double compares.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

 private:
  std::variant<mpq_class, double> value_;
};

/// Square root; exact when the argument is the square of a rational.
Scalar sqrt(const Scalar& s);

/// |a - b| <= tol for floats, exact equality when both are rational.
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

/// Like approx_equal, but the float tolerance scales with max(1, |a|, |b|).
bool approx_equal_rel(const Scalar& a, const Scalar& b, double tol);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses a scalar literal: an integer, "p/q", a decimal ("0.25", float mode),
/// or an arithmetic expression over integers, decimals, sqrt(k), + - * / and
/// parentheses. Expressions are evaluated with Scalar arithmetic, so they stay
/// exact unless a decimal or an irrational square root appears.
Scalar parse_scalar(std::string_view text);

}  // namespace phaseret
