#include "phaseret/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "phaseret/error.hpp"

namespace phaseret {

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::ratio(long p, long q) {
  if (q == 0) throw PreconditionError("rational with zero denominator");
  mpq_class r(p, q);
  return Scalar(std::move(r));
}

const mpq_class& Scalar::rational() const {
  if (!is_exact()) throw PreconditionError("scalar " + str() + " is not rational");
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_d();
  return std::get<double>(value_);
}

int Scalar::sign(double tol) const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
  const double d = std::get<double>(value_);
  if (std::abs(d) <= tol) return 0;
  return d > 0 ? 1 : -1;
}

Scalar Scalar::abs() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(::abs(*q)));
  return Scalar(std::abs(std::get<double>(value_)));
}

Scalar Scalar::reciprocal() const { return Scalar(1) / *this; }

std::string Scalar::str() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, res.ptr);
}

namespace {

template <class ExactOp, class FloatOp>
void combine(std::variant<mpq_class, double>& lhs, const Scalar& rhs, ExactOp exact,
             FloatOp approx) {
  if (auto* q = std::get_if<mpq_class>(&lhs); q && rhs.is_exact()) {
    exact(*q, rhs.rational());
    return;
  }
  const double a = std::holds_alternative<mpq_class>(lhs) ? std::get<mpq_class>(lhs).get_d()
                                                           : std::get<double>(lhs);
  lhs = approx(a, rhs.to_double());
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a += b; },
          [](double a, double b) { return a + b; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a -= b; },
          [](double a, double b) { return a - b; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a *= b; },
          [](double a, double b) { return a * b; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_exact() && sgn(o.rational()) == 0) throw PreconditionError("division by zero");
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a /= b; },
          [](double a, double b) { return a / b; });
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

Scalar sqrt(const Scalar& s) {
  if (s.sign() < 0) throw PreconditionError("square root of negative value " + s.str());
  if (s.is_exact()) {
    const mpq_class& q = s.rational();
    if (mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
        mpz_perfect_square_p(q.get_den_mpz_t()) != 0) {
      mpz_class num = ::sqrt(mpz_class(q.get_num()));
      mpz_class den = ::sqrt(mpz_class(q.get_den()));
      return Scalar(mpq_class(num, den));
    }
  }
  return Scalar(std::sqrt(s.to_double()));
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

bool approx_equal_rel(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  const double x = a.to_double();
  const double y = b.to_double();
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

// ---------------------------------------------------------------------------
// Literal parsing

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    Scalar v = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad scalar literal '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  // Accepts ASCII '-' and the Unicode minus sign (U+2212, UTF-8 E2 88 92).
  bool eat_minus() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expression() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat_minus()) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        Scalar d = factor();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Scalar factor() {
    if (eat('+')) return factor();
    if (eat_minus()) return -factor();
    if (eat('(')) {
      Scalar v = expression();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip_space();
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      Scalar v = expression();
      if (!eat(')')) fail("missing ')'");
      if (v.sign() < 0) fail("sqrt of a negative value");
      return sqrt(v);
    }
    return number();
  }

  Scalar number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    bool decimal = false;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      decimal = true;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      decimal = true;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (exp_start == pos_) fail("malformed exponent");
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (token.empty() || token == ".") fail("expected a number");
    if (decimal) {
      double d = 0.0;
      auto res = std::from_chars(token.data(), token.data() + token.size(), d);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) fail("bad decimal");
      return Scalar(d);
    }
    return Scalar(mpq_class(mpz_class(token, 10)));
  }
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return ExpressionParser(text).parse(); }

}  // namespace phaseret
