#include "qbounce/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace qbounce {
namespace {

// Kronrod 21-point abscissae (positive half, centre first) and weights; the
// 10-point Gauss rule lives on the odd entries.
constexpr std::array<double, 11> kXk = {
    0.0,
    0.148874338981631211,
    0.294392862701460198,
    0.433395394129247191,
    0.562757134668604683,
    0.679409568299024406,
    0.780817726586416897,
    0.865063366688984511,
    0.930157491355708226,
    0.973906528517171720,
    0.995657163025808081};
constexpr std::array<double, 11> kWk = {
    0.149445554002916906,
    0.147739104901338491,
    0.142775938577060081,
    0.134709217311473326,
    0.123491976262065851,
    0.109387158802297642,
    0.0931254545836976055,
    0.0750396748109199528,
    0.0547558965743519960,
    0.0325581623079647275,
    0.0116946388673718743};
constexpr std::array<double, 5> kWg = {
    0.295524224714752870,
    0.269266719309996355,
    0.219086362515982044,
    0.149451349150580593,
    0.0666713443086881376};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk21(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resk = kWk[0] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 1; j <= 10; ++j) {
    const double dx = half * kXk[j];
    const double v1 = f(centre - dx);
    const double v2 = f(centre + dx);
    f1[j - 1] = v1;
    f2[j - 1] = v2;
    resk += kWk[j] * (v1 + v2);
    resabs += kWk[j] * (std::abs(v1) + std::abs(v2));
    if (j % 2 == 1) resg += kWg[j / 2] * (v1 + v2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWk[0] * std::abs(fc - mean);
  for (int j = 1; j <= 10; ++j) {
    resasc += kWk[j] * (std::abs(f1[j - 1] - mean) + std::abs(f2[j - 1] - mean));
  }
  const double scale = std::abs(half);
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * half, err};
}

double tolerance(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be positive");
  if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be >= 1");
  if (!(tail_pad > 0.0)) throw DomainError("quadrature: tail_pad must be positive");
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw DomainError("integrate: need finite a <= b");
  }
  if (a == b) return {};

  std::vector<double> cuts{a, b};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  QuadResult r;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Segment s = gk21(f, cuts[i], cuts[i + 1]);
    r.value += s.value;
    r.error += s.error;
    r.evaluations += 21;
    heap.push(s);
  }

  const int budget = spec.max_subdivisions + static_cast<int>(cuts.size());
  int refreshed = 0;
  while (r.error > tolerance(spec, r.value)) {
    if (static_cast<int>(heap.size()) >= budget) {
      r.converged = false;
      break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      r.converged = false;
      break;
    }
    heap.pop();
    const Segment left = gk21(f, worst.a, mid);
    const Segment right = gk21(f, mid, worst.b);
    r.evaluations += 42;
    r.value += left.value + right.value - worst.value;
    r.error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (++refreshed % 64 == 0) {
      // Re-sum to stop incremental drift in the running totals.
      auto copy = heap;
      double v = 0.0, e = 0.0;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      r.value = v;
      r.error = e;
    }
  }
  if (!std::isfinite(r.value)) r.converged = false;
  return r;
}

QuadResult integrate_panelized(const Integrand& f, double a, double b, double k,
                               const QuadratureSpec& spec) {
  if (k == 0.0 || a >= b) return integrate(f, a, b, spec);
  const double width = std::numbers::pi / std::abs(k);
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width));
  std::vector<double> cuts;
  cuts.reserve(panels);
  for (std::size_t i = 1; i < panels; ++i) cuts.push_back(a + static_cast<double>(i) * width);
  return integrate(f, a, b, spec, cuts);
}

QuadResult oscillatory_integrate(const Integrand& f, double k, TrigKind kind, double a, double b,
                                 const QuadratureSpec& spec) {
  if (!std::isfinite(k) || std::abs(k) > spec.k_max) {
    throw DomainError("oscillatory_integrate: |k| exceeds k_max");
  }
  if (kind == TrigKind::sine && k == 0.0) return {};
  if (kind == TrigKind::cosine) {
    return integrate_panelized([&](double x) { return f(x) * std::cos(k * x); }, a, b, k, spec);
  }
  return integrate_panelized([&](double x) { return f(x) * std::sin(k * x); }, a, b, k, spec);
}

QuadResult integrate_airy_tail(const Integrand& f, double a, const AiryZero& n_hint,
                               const QuadratureSpec& spec) {
  spec.validate();
  double end = std::abs(n_hint.a_n) + spec.tail_pad;
  // The envelope of Ai(x) decays like exp(-2/3 x^1.5), i.e. at rate sqrt(x).
  auto tail_bound = [&](double x) {
    return std::abs(f(x)) / std::sqrt(std::max(1.0, x - std::abs(n_hint.a_n)));
  };
  for (int grow = 0; grow < 8 && tail_bound(end) > std::min(spec.abs_tol, spec.tail_cutoff); ++grow) {
    end += spec.tail_pad;
  }
  if (a >= end) return {};
  QuadResult r = integrate(f, a, end, spec);
  r.error += tail_bound(end);
  return r;
}

FixedRule composite_gauss_legendre(double a, double b, double max_panel) {
  FixedRule r;
  if (!(b > a) || !(max_panel > 0.0)) return r;
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / max_panel)));
  const double width = (b - a) / static_cast<double>(panels);
  r.x.reserve(10 * panels);
  r.w.reserve(10 * panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double centre = a + (static_cast<double>(p) + 0.5) * width;
    for (int j = 1; j <= 9; j += 2) {
      const double dx = 0.5 * width * kXk[j];
      const double wt = 0.5 * width * kWg[j / 2];
      r.x.push_back(centre - dx);
      r.w.push_back(wt);
      r.x.push_back(centre + dx);
      r.w.push_back(wt);
    }
  }
  return r;
}

double value_or_throw(const QuadResult& r, const std::string& context) {
  if (!r.converged) {
    throw QuadratureFailure(context + ": quadrature did not converge (estimate " +
                                std::to_string(r.value) + ", error " + std::to_string(r.error) + ")",
                            r);
  }
  return r.value;
}

}  // namespace qbounce
