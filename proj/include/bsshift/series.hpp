#ifndef BSSHIFT_SERIES_HPP
#define BSSHIFT_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bsshift/rational.hpp"

namespace bsshift {

/// Truncated power series in the even powers of x = A/omega0:
///   s(x) = sum_{k=0}^{K} coeffs[k] * x^(2k),  K = truncation_order().
///
/// Everything is exact; products drop every term above x^(2K).
class EvenSeries {
public:
  explicit EvenSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw std::invalid_argument("EvenSeries: at least the constant term is required");
    }
  }
  EvenSeries(std::initializer_list<Rational> coeffs) : EvenSeries(std::vector<Rational>(coeffs)) {}

  /// 1 + 0 x^2 + ... + 0 x^(2K)
  static EvenSeries identity(std::size_t truncation_order) {
    std::vector<Rational> c(truncation_order + 1);
    c[0] = Rational(1);
    return EvenSeries(std::move(c));
  }

  std::size_t truncation_order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }

  /// Term-wise sum, truncated to the smaller truncation order.
  friend EvenSeries operator+(const EvenSeries& a, const EvenSeries& b) {
    const std::size_t order = std::min(a.truncation_order(), b.truncation_order());
    std::vector<Rational> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
      c[k] = a.coeffs_[k] + b.coeffs_[k];
    }
    return EvenSeries(std::move(c));
  }

  /// Truncated Cauchy product.
  friend EvenSeries operator*(const EvenSeries& a, const EvenSeries& b) {
    const std::size_t order = std::min(a.truncation_order(), b.truncation_order());
    std::vector<Rational> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
      for (std::size_t i = 0; i <= k; ++i) {
        if (!a.coeffs_[i].is_zero() && !b.coeffs_[k - i].is_zero()) {
          c[k] += a.coeffs_[i] * b.coeffs_[k - i];
        }
      }
    }
    return EvenSeries(std::move(c));
  }

  friend bool operator==(const EvenSeries&, const EvenSeries&) = default;

private:
  std::vector<Rational> coeffs_;
};

namespace detail {

inline void require_supported_order(int order, const char* what) {
  if (order < 2 || order > 8 || order % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": order must be one of 2, 4, 6, 8 (got " +
                                std::to_string(order) + ")");
  }
}

}  // namespace detail

/// Coefficients c_k of the weak-driving resonance series
///   omega_res = omega0 + sum_k c_k (A/4)^(2k) / omega0^(2k-1),
/// known through k = 4.
inline const std::vector<Rational>& resonance_series_coefficients() {
  static const std::vector<Rational> c{Rational(1), Rational(1, 4), Rational(-35, 32),
                                       Rational(103, 128)};
  return c;
}

/// omega_res / omega0 as an even series in x = A/omega0, truncated at x^max_order.
inline EvenSeries pt_series(int max_order) {
  detail::require_supported_order(max_order, "pt_series");
  const std::size_t terms = static_cast<std::size_t>(max_order / 2);
  const auto& c = resonance_series_coefficients();
  std::vector<Rational> coeffs{Rational(1)};
  Rational sixteenth_power(1);
  for (std::size_t k = 1; k <= terms; ++k) {
    sixteenth_power *= Rational(1, 16);
    coeffs.push_back(c[k - 1] * sixteenth_power);
  }
  return EvenSeries(std::move(coeffs));
}

/// s^n by repeated truncated multiplication. Requires a normalized series
/// (constant term exactly 1); n == 0 gives the identity series.
inline EvenSeries series_pow(const EvenSeries& s, unsigned n) {
  if (s[0] != Rational(1)) {
    throw std::invalid_argument("series_pow: series must have constant term 1");
  }
  EvenSeries result = EvenSeries::identity(s.truncation_order());
  for (unsigned i = 0; i < n; ++i) {
    result = result * s;
  }
  return result;
}

/// Closed-form shift approximation of a given even order n:
///   shift = omega0 * [ (1 + sum_{k=1}^{n/2} d_k x^(2k))^(1/n) - 1 ].
struct ExtrapolationFormula {
  int order = 0;
  std::vector<Rational> d;  // d[0] multiplies x^2

  const Rational& leading() const { return d.back(); }

  /// Radicand coefficients including the constant 1, as "p/q" strings.
  std::vector<std::string> radicand_strings() const {
    std::vector<std::string> out{"1"};
    for (const auto& c : d) {
      out.push_back(c.str());
    }
    return out;
  }

  friend bool operator==(const ExtrapolationFormula&, const ExtrapolationFormula&) = default;
};

/// Raises the order-n resonance series to the n-th power; the radicand of the
/// closed form is that power, so its x^(2k) coefficients are the d_k.
inline ExtrapolationFormula derive_formula(int order) {
  detail::require_supported_order(order, "derive_formula");
  const EvenSeries powered = series_pow(pt_series(order), static_cast<unsigned>(order));
  ExtrapolationFormula f;
  f.order = order;
  f.d.assign(powered.coeffs().begin() + 1, powered.coeffs().end());
  return f;
}

/// D such that shift -> A / D for A/omega0 -> infinity, i.e. d_{n/2}^(-1/n).
inline double asymptotic_divisor(const ExtrapolationFormula& f) {
  if (f.d.empty() || f.leading().sign() <= 0) {
    throw std::domain_error("asymptotic_divisor: leading radicand coefficient must be positive");
  }
  return std::pow(f.leading().to<double>(), -1.0 / f.order);
}

}  // namespace bsshift

#endif  // BSSHIFT_SERIES_HPP
