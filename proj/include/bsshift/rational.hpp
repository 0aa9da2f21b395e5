#ifndef BSSHIFT_RATIONAL_HPP
#define BSSHIFT_RATIONAL_HPP

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace bsshift {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Always stored in canonical form: the denominator is positive and
/// gcd(|numerator|, denominator) == 1. Zero is 0/1.
class Rational {
public:
  Rational() : num_(0), den_(1) {}

  template <typename Int, std::enable_if_t<std::is_integral_v<Int>, int> = 0>
  Rational(Int n) : num_(n), den_(1) {}

  Rational(BigInt n) : num_(std::move(n)), den_(1) {}

  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) {
      throw std::domain_error("Rational: zero denominator");
    }
    canonicalize();
  }

  /// Parses "p", "-p" or "p/q" (no whitespace, no decimal point).
  static Rational parse(std::string_view text) {
    if (text.empty()) {
      throw std::invalid_argument("Rational::parse: empty string");
    }
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view part) {
      std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (part.size() == start) {
        throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
      }
      for (std::size_t i = start; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') {
          throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
        }
      }
      return BigInt(std::string(part));
    };
    if (slash == std::string_view::npos) {
      return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  /// "p/q", or just "p" when the denominator is one.
  std::string str() const {
    if (den_ == 1) {
      return num_.str();
    }
    return num_.str() + "/" + den_.str();
  }

  /// Nearest representable value in `Real`. Works for builtin floating types
  /// and for Boost.Multiprecision floating types.
  template <typename Real>
  Real to() const {
    if constexpr (std::is_arithmetic_v<Real>) {
      // Divide in long double first; the coefficients handled here are far
      // from the exponent range limits.
      return static_cast<Real>(num_.template convert_to<long double>() /
                               den_.template convert_to<long double>());
    } else {
      return Real(num_) / Real(den_);
    }
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    canonicalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    canonicalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) {
      throw std::domain_error("Rational: division by zero");
    }
    num_ *= o.den_;
    den_ *= o.num_;
    canonicalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  // Canonical form makes member-wise equality exact equality.
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  void canonicalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

/// Integer power with a non-negative exponent.
inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  for (unsigned i = 0; i < exponent; ++i) {
    result *= base;
  }
  return result;
}

}  // namespace bsshift

#endif  // BSSHIFT_RATIONAL_HPP
