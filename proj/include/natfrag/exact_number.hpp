#pragma once

// Exact ordered-field arithmetic over Q and real quadratic fields Q(sqrt(m)).
//
// A value is a + b*sqrt(m) with a, b rational (GMP, always canonical) and m a
// square-free integer >= 2.  Rationals are stored with m = 0 and b = 0, so
// two values are equal exactly when their representations are equal.
// Operands that are both irrational with different radicands are rejected.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "natfrag/error.hpp"

namespace natfrag {

class ExactNumber {
 public:
  ExactNumber() = default;

  template <std::integral I>
  ExactNumber(I value) : a_(static_cast<long>(value)) {}  // NOLINT implicit

  ExactNumber(const mpz_class& value) : a_(value) {}  // NOLINT implicit

  ExactNumber(mpq_class value) : a_(std::move(value)) {  // NOLINT implicit
    a_.canonicalize();
  }

  static ExactNumber fraction(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return ExactNumber(std::move(q));
  }

  /// a + b*sqrt(m); m is reduced to its square-free part.
  static ExactNumber quadratic(mpq_class a, mpq_class b, std::int64_t m) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "negative radicand");
    a.canonicalize();
    b.canonicalize();
    auto [square, free] = split_square(m);
    if (free == 0 || b == 0) return ExactNumber(std::move(a));
    b *= square;
    if (free == 1) return ExactNumber(mpq_class(a + b));
    ExactNumber out;
    out.a_ = std::move(a);
    out.b_ = std::move(b);
    out.m_ = free;
    return out;
  }

  static ExactNumber sqrt(std::int64_t m) { return quadratic(0, 1, m); }

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& radical_part() const { return b_; }
  std::int64_t radicand() const { return m_; }
  bool is_rational() const { return m_ == 0; }
  bool is_integer() const { return m_ == 0 && a_.get_den() == 1; }

  int sign() const {
    int sa = sgn(a_);
    if (m_ == 0) return sa;
    int sb = sgn(b_);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 m (never equal, sqrt(m) irrational)
    mpq_class lhs = a_ * a_;
    mpq_class rhs = b_ * b_ * m_;
    return lhs > rhs ? sa : sb;
  }

  bool is_zero() const { return m_ == 0 && a_ == 0; }

  ExactNumber operator-() const {
    ExactNumber out(*this);
    out.a_ = -out.a_;
    out.b_ = -out.b_;
    return out;
  }

  friend ExactNumber operator+(const ExactNumber& x, const ExactNumber& y) {
    std::int64_t m = common_radicand(x, y);
    return make(x.a_ + y.a_, x.b_ + y.b_, m);
  }

  friend ExactNumber operator-(const ExactNumber& x, const ExactNumber& y) {
    std::int64_t m = common_radicand(x, y);
    return make(x.a_ - y.a_, x.b_ - y.b_, m);
  }

  friend ExactNumber operator*(const ExactNumber& x, const ExactNumber& y) {
    std::int64_t m = common_radicand(x, y);
    if (m == 0) return ExactNumber(mpq_class(x.a_ * y.a_));
    mpq_class a = x.a_ * y.a_ + x.b_ * y.b_ * m;
    mpq_class b = x.a_ * y.b_ + x.b_ * y.a_;
    return make(std::move(a), std::move(b), m);
  }

  friend ExactNumber operator/(const ExactNumber& x, const ExactNumber& y) {
    return x * y.inverse();
  }

  ExactNumber inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (m_ == 0) return ExactNumber(mpq_class(1 / a_));
    mpq_class norm = a_ * a_ - b_ * b_ * m_;
    return make(a_ / norm, -b_ / norm, m_);
  }

  ExactNumber& operator+=(const ExactNumber& y) { return *this = *this + y; }
  ExactNumber& operator-=(const ExactNumber& y) { return *this = *this - y; }
  ExactNumber& operator*=(const ExactNumber& y) { return *this = *this * y; }
  ExactNumber& operator/=(const ExactNumber& y) { return *this = *this / y; }

  friend bool operator==(const ExactNumber& x, const ExactNumber& y) {
    return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  friend std::strong_ordering operator<=>(const ExactNumber& x,
                                          const ExactNumber& y) {
    if (x.m_ == 0 && y.m_ == 0) {
      int c = cmp(x.a_, y.a_);
      return c < 0 ? std::strong_ordering::less
                   : c > 0 ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : s > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  /// Greatest integer <= x.
  mpz_class floor() const {
    if (m_ == 0) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
      return q;
    }
    // |b| sqrt(m) = sqrt(p^2 m) / q lies in [s/q, (s+1)/q) with s = isqrt(p^2 m)
    mpz_class p = abs(b_.get_num());
    const mpz_class& q = b_.get_den();
    mpz_class s;
    mpz_class radicand = p * p * m_;
    mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
    mpq_class lo, hi;
    if (b_ > 0) {
      lo = a_ + mpq_class(s, q);
      hi = a_ + mpq_class(s + 1, q);
    } else {
      lo = a_ - mpq_class(s + 1, q);
      hi = a_ - mpq_class(s, q);
    }
    lo.canonicalize();
    hi.canonicalize();
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    // the bracket has width 1/q <= 1, so k or k + 1 is the answer
    if (*this >= ExactNumber(mpz_class(k + 1))) return k + 1;
    return k;
  }

  ExactNumber frac() const { return *this - ExactNumber(floor()); }

  double to_double() const {
    double v = a_.get_d();
    if (m_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(m_));
    return v;
  }

  std::string to_string() const {
    if (m_ == 0) return a_.get_str();
    std::string out;
    if (a_ != 0) out = a_.get_str();
    if (b_ == 1) {
      out += out.empty() ? "" : "+";
    } else if (b_ == -1) {
      out += "-";
    } else {
      if (!out.empty() && b_ > 0) out += "+";
      out += b_.get_str() + "*";
    }
    out += "sqrt(" + std::to_string(m_) + ")";
    return out;
  }

  /// Parses "p/q", "p/q+r/s*sqrt(m)" and sums of such terms.  Whitespace is
  /// ignored.
  static ExactNumber parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const ExactNumber& x) {
    return os << x.to_string();
  }

 private:
  static std::int64_t common_radicand(const ExactNumber& x,
                                      const ExactNumber& y) {
    if (x.m_ == 0) return y.m_;
    if (y.m_ == 0 || x.m_ == y.m_) return x.m_;
    throw Error(ErrorKind::RadicandMismatch,
                "sqrt(" + std::to_string(x.m_) + ") vs sqrt(" +
                    std::to_string(y.m_) + ")");
  }

  static ExactNumber make(mpq_class a, mpq_class b, std::int64_t m) {
    ExactNumber out;
    out.a_ = std::move(a);
    if (m != 0 && b != 0) {
      out.b_ = std::move(b);
      out.m_ = m;
    }
    return out;
  }

  // m = square^2 * free with free square-free
  static std::pair<std::int64_t, std::int64_t> split_square(std::int64_t m) {
    std::int64_t square = 1;
    std::int64_t free = 1;
    if (m == 0) return {0, 0};
    for (std::int64_t p = 2; p * p <= m; ++p) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      for (int i = 0; i < e / 2; ++i) square *= p;
      if (e % 2) free *= p;
    }
    free *= m;
    return {square, free};
  }

  mpq_class a_;
  mpq_class b_;
  std::int64_t m_ = 0;
};

namespace detail {

class NumberParser {
 public:
  explicit NumberParser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  ExactNumber parse() {
    if (s_.empty()) fail("empty number");
    ExactNumber total;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      ExactNumber term = parse_term();
      total = total + (sign < 0 ? -term : term);
      first = false;
    }
    return total;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, why + " in '" + s_ + "'");
  }

  mpz_class parse_integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  std::int64_t parse_sqrt() {
    if (s_.compare(pos_, 5, "sqrt(") != 0) fail("expected sqrt(");
    pos_ += 5;
    mpz_class m = parse_integer();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    if (!m.fits_slong_p()) fail("radicand too large");
    return m.get_si();
  }

  ExactNumber parse_term() {
    if (peek() == 's') return ExactNumber::sqrt(parse_sqrt());
    mpz_class num = parse_integer();
    mpz_class den = 1;
    if (peek() == '/') {
      ++pos_;
      den = parse_integer();
      if (den == 0)
        throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s_ + "'");
    }
    ExactNumber coeff = ExactNumber::fraction(num, den);
    if (peek() == '*') {
      ++pos_;
      return coeff * ExactNumber::sqrt(parse_sqrt());
    }
    return coeff;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExactNumber ExactNumber::parse(std::string_view text) {
  return detail::NumberParser(text).parse();
}

inline ExactNumber abs(const ExactNumber& x) { return x.sign() < 0 ? -x : x; }

inline const ExactNumber& min(const ExactNumber& x, const ExactNumber& y) {
  return y < x ? y : x;
}

inline const ExactNumber& max(const ExactNumber& x, const ExactNumber& y) {
  return x < y ? y : x;
}

inline ExactNumber midpoint(const ExactNumber& x, const ExactNumber& y) {
  return (x + y) / ExactNumber(2);
}

/// The golden ratio (1 + sqrt 5) / 2.
inline ExactNumber golden_ratio() {
  return ExactNumber::quadratic(mpq_class(1, 2), mpq_class(1, 2), 5);
}

}  // namespace natfrag
