#ifndef BSSHIFT_GOLDEN_SECTION_HPP
#define BSSHIFT_GOLDEN_SECTION_HPP

#include <cmath>
#include <stdexcept>

namespace bsshift {

struct GoldenSectionResult {
  double x = 0.0;       // midpoint of the final bracket
  double value = 0.0;   // f at the best point evaluated
  double lo = 0.0;      // final bracket
  double hi = 0.0;
  int evals = 0;
};

/// Maximizes a unimodal f on [lo, hi] until the bracket is narrower than tol.
/// One new function evaluation per iteration.
template <typename F>
GoldenSectionResult golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iter = 500) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw std::invalid_argument("golden_section_maximize: need lo < hi and tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...
  GoldenSectionResult r;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  r.evals = 2;

  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++r.evals;
  }
  r.lo = a;
  r.hi = b;
  r.x = 0.5 * (a + b);
  r.value = fc >= fd ? fc : fd;
  return r;
}

}  // namespace bsshift

#endif  // BSSHIFT_GOLDEN_SECTION_HPP
