#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qbounce::detail {

// Newton iteration kept inside a sign-change bracket [lo, hi]; falls back to
// bisection whenever the Newton step leaves the bracket.  `fdf(x)` returns
// {f(x), f'(x)}.
template <class FDF>
double safeguarded_newton(FDF&& fdf, double lo, double hi, double x, double rel_tol = 1e-15,
                          int max_iter = 200) {
  double f_lo = fdf(lo).first;
  const double f_hi = fdf(hi).first;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) throw std::runtime_error("safeguarded_newton: no sign change");
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int iter = 0; iter < max_iter; ++iter) {
    const auto [f, df] = fdf(x);
    if (f == 0.0) return x;
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(next));
    if (std::abs(next - x) <= rel_tol * scale || hi - lo <= rel_tol * scale) return next;
    x = next;
  }
  return x;
}

}  // namespace qbounce::detail
