#pragma once

// Airy functions Ai, Bi and their first derivatives for real arguments, plus
// the negative zeros of Ai.
//
// For |x| <= kSeriesSwitch the values come from the Maclaurin series, summed in
// 113-bit floating point at a set of tabulated nodes and carried to the
// requested point by a short local Taylor expansion of the Airy equation
// y'' = x y.  Beyond the switch the standard exponential (x > 0) and
// oscillatory (x < 0) asymptotic expansions are used.

#include "qbounce/errors.hpp"

namespace qbounce {

struct AiryValue {
  double x = 0.0;
  double ai = 0.0;
  double ai_prime = 0.0;
  double bi = 0.0;
  double bi_prime = 0.0;
};

struct AiryZero {
  int n = 0;
  double a_n = 0.0;
};

inline constexpr double kSeriesSwitch = 8.0;

/// All four Airy values at x.  Throws DomainError for non-finite x.
AiryValue airy_eval(double x);

/// Ai(x) alone; same accuracy as airy_eval.
double airy_ai(double x);

/// n-th negative zero of Ai, 1 <= n <= 200.
AiryZero airy_zero(int n);

namespace detail {

// Building blocks exposed for cross-validation of the two regimes.
AiryValue airy_maclaurin(double x);
AiryValue airy_asymptotic(double x);

}  // namespace detail

}  // namespace qbounce
