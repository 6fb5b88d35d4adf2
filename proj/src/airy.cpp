#include "qbounce/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qbounce/roots.hpp"

namespace qbounce {
namespace {

using quad = __float128;

// Ai(0), Ai'(0), Bi(0), Bi'(0) split into double-double pairs (hi + lo).
constexpr double kAi0Hi = 0.3550280538878172, kAi0Lo = 2.05233632436212e-17;
constexpr double kAip0Hi = -0.2588194037928068, kAip0Lo = 2.522243111610832e-17;
constexpr double kBi0Hi = 0.6149266274460007, kBi0Lo = 5.0899207794891416e-17;
constexpr double kBip0Hi = 0.4482883573538264, kBip0Lo = -2.5363237774417305e-17;

struct QuadAiry {
  quad ai, ai_prime, bi, bi_prime;
};

// Maclaurin series y = y(0) f(x) + y'(0) g(x) with the two canonical series
// solutions f (f(0)=1, f'(0)=0) and g (g(0)=0, g'(0)=1).
QuadAiry maclaurin_quad(quad x) {
  const quad x3 = x * x * x;
  quad f_term = 1, g_term = x, fp_term = x * x / 2, gp_term = 1;
  quad f = f_term, g = g_term, fp = fp_term, gp = gp_term;
  for (int k = 0; k < 400; ++k) {
    const quad k3 = 3 * static_cast<quad>(k);
    f_term *= x3 / ((k3 + 2) * (k3 + 3));
    g_term *= x3 / ((k3 + 3) * (k3 + 4));
    fp_term *= x3 / ((k3 + 3) * (k3 + 5));
    gp_term *= x3 / ((k3 + 1) * (k3 + 3));
    f += f_term;
    g += g_term;
    fp += fp_term;
    gp += gp_term;
    const quad tiny = static_cast<quad>(1e-38);
    auto small = [&](quad term, quad sum) {
      const quad t = term < 0 ? -term : term;
      const quad s = sum < 0 ? -sum : sum;
      return t <= tiny * (s + 1);
    };
    if (k > 2 && small(f_term, f) && small(g_term, g) && small(fp_term, fp) &&
        small(gp_term, gp)) {
      break;
    }
  }
  const quad ai0 = static_cast<quad>(kAi0Hi) + static_cast<quad>(kAi0Lo);
  const quad aip0 = static_cast<quad>(kAip0Hi) + static_cast<quad>(kAip0Lo);
  const quad bi0 = static_cast<quad>(kBi0Hi) + static_cast<quad>(kBi0Lo);
  const quad bip0 = static_cast<quad>(kBip0Hi) + static_cast<quad>(kBip0Lo);
  return {ai0 * f + aip0 * g, ai0 * fp + aip0 * gp, bi0 * f + bip0 * g, bi0 * fp + bip0 * gp};
}

// Node table for the series regime.
constexpr double kNodeStep = 0.25;
constexpr int kNodeCount = static_cast<int>(2 * kSeriesSwitch / kNodeStep) + 1;

struct Node {
  double x, ai, ai_prime, bi, bi_prime;
};

const std::array<Node, kNodeCount>& node_table() {
  static const std::array<Node, kNodeCount> table = [] {
    std::array<Node, kNodeCount> t{};
    for (int i = 0; i < kNodeCount; ++i) {
      const double x = -kSeriesSwitch + kNodeStep * i;
      const QuadAiry q = maclaurin_quad(static_cast<quad>(x));
      t[i] = {x, static_cast<double>(q.ai), static_cast<double>(q.ai_prime),
              static_cast<double>(q.bi), static_cast<double>(q.bi_prime)};
    }
    return t;
  }();
  return table;
}

// Local Taylor expansion of y'' = x y about a node x0.
template <bool WithBi>
AiryValue taylor_from_node(double x) {
  const auto& table = node_table();
  int idx = static_cast<int>(std::lround((x + kSeriesSwitch) / kNodeStep));
  idx = std::clamp(idx, 0, kNodeCount - 1);
  const Node& nd = table[idx];
  const double x0 = nd.x;
  const double h = x - x0;

  // Taylor coefficients t_k of Ai and Bi about x0.
  double a_km1 = nd.ai_prime, a_k = 0.5 * x0 * nd.ai;  // t1, t2
  double b_km1 = nd.bi_prime, b_k = 0.5 * x0 * nd.bi;
  double a_prev2 = nd.ai, b_prev2 = nd.bi;  // t0

  double hp = h;  // h^(k-1) for k = 2
  double ai = nd.ai + nd.ai_prime * h;
  double aip = nd.ai_prime;
  double bi = 0.0, bip = 0.0;
  if constexpr (WithBi) {
    bi = nd.bi + nd.bi_prime * h;
    bip = nd.bi_prime;
  }
  for (int k = 2; k < 20; ++k) {
    aip += k * a_k * hp;
    if constexpr (WithBi) bip += k * b_k * hp;
    hp *= h;
    ai += a_k * hp;
    if constexpr (WithBi) bi += b_k * hp;
    // t_{k+1} = (x0 t_{k-1} + t_{k-2}) / (k (k+1))
    const double denom = static_cast<double>(k) * (k + 1);
    const double a_next = (x0 * a_km1 + a_prev2) / denom;
    a_prev2 = a_km1;
    a_km1 = a_k;
    a_k = a_next;
    if constexpr (WithBi) {
      const double b_next = (x0 * b_km1 + b_prev2) / denom;
      b_prev2 = b_km1;
      b_km1 = b_k;
      b_k = b_next;
    }
  }
  return {x, ai, aip, bi, bip};
}

// Coefficients u_k, v_k of the asymptotic expansions.
constexpr int kAsymptoticTerms = 64;
struct AsymptoticCoefficients {
  std::array<double, kAsymptoticTerms> u{}, v{};
};

const AsymptoticCoefficients& asymptotic_coefficients() {
  static const AsymptoticCoefficients c = [] {
    AsymptoticCoefficients r;
    r.u[0] = r.v[0] = 1.0;
    for (int k = 1; k < kAsymptoticTerms; ++k) {
      const double kk = k;
      r.u[k] = r.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
      r.v[k] = -(6 * kk + 1) / (6 * kk - 1) * r.u[k];
    }
    return r;
  }();
  return c;
}

// Sums sum_k sign_k c_{first + step*k} / zeta^{first + step*k}, stopping at the
// smallest term of the divergent series.
double asymptotic_sum(const std::array<double, kAsymptoticTerms>& c, double zeta, int first,
                      int step, bool alternate) {
  double sum = 0.0;
  double last = INFINITY;
  double sign = 1.0;
  for (int k = first; k < kAsymptoticTerms; k += step) {
    const double term = sign * c[k] / std::pow(zeta, k);
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    if (mag <= 1e-18 * std::abs(sum)) break;
    last = mag;
    if (alternate) sign = -sign;
  }
  return sum;
}

template <bool WithBi>
AiryValue asymptotic_impl(double x) {
  const auto& c = asymptotic_coefficients();
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  AiryValue r{x, 0, 0, 0, 0};
  if (x > 0.0) {
    const double q = std::sqrt(std::sqrt(x));
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double decay = std::exp(-zeta);
    r.ai = 0.5 * inv_sqrt_pi * decay / q * asymptotic_sum(c.u, zeta, 0, 1, true);
    r.ai_prime = -0.5 * inv_sqrt_pi * q * decay * asymptotic_sum(c.v, zeta, 0, 1, true);
    if constexpr (WithBi) {
      const double growth = std::exp(zeta);
      r.bi = inv_sqrt_pi * growth / q * asymptotic_sum(c.u, zeta, 0, 1, false);
      r.bi_prime = inv_sqrt_pi * q * growth * asymptotic_sum(c.v, zeta, 0, 1, false);
    }
  } else {
    const double z = -x;
    const double q = std::sqrt(std::sqrt(z));
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double s = std::sin(zeta), co = std::cos(zeta);
    const double cos_t = (co + s) / std::numbers::sqrt2;  // cos(zeta - pi/4)
    const double sin_t = (s - co) / std::numbers::sqrt2;  // sin(zeta - pi/4)
    const double pu = asymptotic_sum(c.u, zeta, 0, 2, true);
    const double qu = asymptotic_sum(c.u, zeta, 1, 2, true);
    const double pv = asymptotic_sum(c.v, zeta, 0, 2, true);
    const double qv = asymptotic_sum(c.v, zeta, 1, 2, true);
    r.ai = inv_sqrt_pi / q * (cos_t * pu + sin_t * qu);
    r.ai_prime = inv_sqrt_pi * q * (sin_t * pv - cos_t * qv);
    if constexpr (WithBi) {
      r.bi = inv_sqrt_pi / q * (-sin_t * pu + cos_t * qu);
      r.bi_prime = inv_sqrt_pi * q * (cos_t * pv + sin_t * qv);
    }
  }
  return r;
}

void check_finite(double x) {
  if (!std::isfinite(x)) throw DomainError("airy: non-finite argument");
}

}  // namespace

AiryValue airy_eval(double x) {
  check_finite(x);
  if (std::abs(x) <= kSeriesSwitch) return taylor_from_node<true>(x);
  return asymptotic_impl<true>(x);
}

double airy_ai(double x) {
  check_finite(x);
  if (std::abs(x) <= kSeriesSwitch) return taylor_from_node<false>(x).ai;
  return asymptotic_impl<false>(x).ai;
}

AiryZero airy_zero(int n) {
  if (n < 1 || n > 200) {
    throw DomainError("airy_zero: index " + std::to_string(n) + " outside [1, 200]");
  }
  const double t = 3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0;
  const double guess = -std::pow(t, 2.0 / 3.0);
  const double quarter = 0.25 * std::numbers::pi / std::sqrt(-guess);

  auto ai = [](double x) { return airy_ai(x); };
  double lo = guess - quarter, hi = guess + quarter;
  for (int widen = 0; widen < 8 && (ai(lo) > 0.0) == (ai(hi) > 0.0); ++widen) {
    lo -= 0.5 * quarter;
    hi += 0.5 * quarter;
  }
  auto fdf = [](double x) {
    const AiryValue v = airy_eval(x);
    return std::pair{v.ai, v.ai_prime};
  };
  return {n, detail::safeguarded_newton(fdf, lo, hi, guess, 1e-15)};
}

namespace detail {

AiryValue airy_maclaurin(double x) {
  check_finite(x);
  const QuadAiry q = maclaurin_quad(static_cast<quad>(x));
  return {x, static_cast<double>(q.ai), static_cast<double>(q.ai_prime),
          static_cast<double>(q.bi), static_cast<double>(q.bi_prime)};
}

AiryValue airy_asymptotic(double x) {
  check_finite(x);
  if (x == 0.0) throw DomainError("airy_asymptotic: undefined at 0");
  return asymptotic_impl<true>(x);
}

}  // namespace detail
}  // namespace qbounce
