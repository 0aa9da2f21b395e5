#ifndef BSSHIFT_APPROX_HPP
#define BSSHIFT_APPROX_HPP

#include <array>
#include <cmath>
#include <string>

#include "bsshift/bessel.hpp"
#include "bsshift/report.hpp"
#include "bsshift/series.hpp"

namespace bsshift {

/// Derived formulas for orders 2, 4, 6, 8, built once on first use.
inline const ExtrapolationFormula& cached_formula(int order) {
  detail::require_supported_order(order, "cached_formula");
  static const std::array<ExtrapolationFormula, 4> formulas{derive_formula(2), derive_formula(4),
                                                            derive_formula(6), derive_formula(8)};
  return formulas[static_cast<std::size_t>(order / 2 - 1)];
}

/// omega0 * [(1 + sum_k d_k x^(2k))^(1/n) - 1] with x = A/omega0.
///
/// For x <= 1 the difference is formed as u / sum_{j<n} r^j with
/// r = (1+u)^(1/n), so small shifts keep full relative precision. For x > 1
/// the leading term d_{n/2} x^n is factored out of the radicand so it never
/// overflows.
template <typename Real>
Real extrapolated_shift_value(const Real& omega0, const Real& amplitude, const ExtrapolationFormula& f) {
  using std::pow;
  const int n = f.order;
  const std::size_t terms = f.d.size();
  const Real x = amplitude / omega0;
  const Real inv_n = Real(1) / Real(n);

  if (x <= Real(1)) {
    const Real x2 = x * x;
    Real u(0);
    Real x_pow(1);
    for (std::size_t k = 0; k < terms; ++k) {
      x_pow *= x2;
      u += f.d[k].template to<Real>() * x_pow;
    }
    if (u == Real(0)) {
      return Real(0);
    }
    const Real r = pow(Real(1) + u, inv_n);
    Real denom(0);
    Real r_pow(1);
    for (int j = 0; j < n; ++j) {
      denom += r_pow;
      r_pow *= r;
    }
    return omega0 * u / denom;
  }

  // 1 + sum_k d_k x^(2k) = d_K x^(2K) * (1 + v),
  // v = sum_{k<K} (d_k/d_K) x^(2k-2K) + x^(-2K)/d_K.
  const Real lead = f.leading().template to<Real>();
  const Real inv_x2 = Real(1) / (x * x);
  Real v(0);
  Real inv_pow(1);
  for (std::size_t k = terms - 1; k-- > 0;) {
    inv_pow *= inv_x2;
    v += (f.d[k].template to<Real>() / lead) * inv_pow;
  }
  inv_pow *= inv_x2;
  v += inv_pow / lead;
  return amplitude * pow(lead, inv_n) * pow(Real(1) + v, inv_n) - omega0;
}

template <typename Real>
Real extrapolated_shift_value(const Real& omega0, const Real& amplitude, int order) {
  return extrapolated_shift_value(omega0, amplitude, cached_formula(order));
}

/// Raw truncated series sum_{k=1}^{order/2} c_k (A/4)^(2k) / omega0^(2k-1).
template <typename Real>
Real pt_shift_value(const Real& omega0, const Real& amplitude, int order) {
  detail::require_supported_order(order, "pt_shift");
  const auto& c = resonance_series_coefficients();
  const Real q = amplitude / Real(4);
  const Real q2_over_w2 = (q / omega0) * (q / omega0);
  Real term = q * q / omega0;
  Real sum(0);
  for (int k = 1; k <= order / 2; ++k) {
    sum += c[static_cast<std::size_t>(k - 1)].template to<Real>() * term;
    term *= q2_over_w2;
  }
  return sum;
}

inline ShiftReport extrapolated_shift(const RabiParams& p, int order) {
  const ExtrapolationFormula& f = cached_formula(order);
  ShiftReport r{extrap_method(order), p, extrapolated_shift_value(p.omega0(), p.amplitude(), f), {}};
  r.diagnostics["order"] = static_cast<long long>(order);
  r.diagnostics["regime"] = regime_label(p.ratio());
  return r;
}

inline ShiftReport pt_shift(const RabiParams& p, int order) {
  ShiftReport r{pt_method(order), p, pt_shift_value(p.omega0(), p.amplitude(), order), {}};
  r.diagnostics["order"] = static_cast<long long>(order);
  r.diagnostics["regime"] = regime_label(p.ratio());
  return r;
}

/// Rotating-wave baseline: the resonance stays at omega0.
inline ShiftReport rwa_shift(const RabiParams& p) {
  ShiftReport r{Method::RWA, p, 0.0, {}};
  r.diagnostics["regime"] = regime_label(p.ratio());
  return r;
}

/// Strong-driving limit shift = A / j01.
inline ShiftReport asymptotic_shift(const RabiParams& p) {
  const double j01 = bessel_j0_first_zero();
  ShiftReport r{Method::ASYMPTOTIC, p, p.amplitude() / j01, {}};
  r.diagnostics["divisor"] = j01;
  r.diagnostics["regime"] = regime_label(p.ratio());
  if (p.ratio() < 10.0) {
    r.diagnostics["warning"] = std::string("A/omega0 < 10, strong-driving limit not reached");
  }
  return r;
}

}  // namespace bsshift

#endif  // BSSHIFT_APPROX_HPP
