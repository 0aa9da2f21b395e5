#ifndef BSSHIFT_BESSEL_HPP
#define BSSHIFT_BESSEL_HPP

#include <cmath>
#include <limits>

namespace bsshift {

/// J0(x) from its ascending series sum_m (-1)^m (x/2)^(2m) / (m!)^2.
/// Accurate to a few ulp for |x| < 4; cancellation grows beyond that.
template <typename Real>
Real bessel_j0_series(Real x) {
  using std::abs;
  const Real q = -(x * x) / Real(4);
  Real term(1);
  Real sum(1);
  for (int m = 1; m < 200; ++m) {
    term *= q / Real(m * m);
    sum += term;
    if (abs(term) <= std::numeric_limits<Real>::epsilon() * abs(sum)) {
      break;
    }
  }
  return sum;
}

/// J1(x) = sum_m (-1)^m (x/2)^(2m+1) / (m! (m+1)!).
template <typename Real>
Real bessel_j1_series(Real x) {
  using std::abs;
  const Real q = -(x * x) / Real(4);
  Real term = x / Real(2);
  Real sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / Real(m * (m + 1));
    sum += term;
    if (abs(term) <= std::numeric_limits<Real>::epsilon() * abs(sum)) {
      break;
    }
  }
  return sum;
}

namespace detail {

inline double compute_j0_first_zero() {
  // J0(2) > 0 > J0(3), and J0 is monotone in between.
  double lo = 2.0;
  double hi = 3.0;
  for (int i = 0; i < 30; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j0_series(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // J0' = -J1
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double step = bessel_j0_series(x) / bessel_j1_series(x);
    x += step;
    if (std::abs(step) < 4.0 * std::numeric_limits<double>::epsilon() * x) {
      break;
    }
  }
  return x;
}

}  // namespace detail

/// Smallest positive root of J0 (about 2.4048256), computed once.
inline double bessel_j0_first_zero() {
  static const double root = detail::compute_j0_first_zero();
  return root;
}

}  // namespace bsshift

#endif  // BSSHIFT_BESSEL_HPP
