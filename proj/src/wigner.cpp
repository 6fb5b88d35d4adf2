#include "qbounce/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbounce/parallel.hpp"

namespace qbounce {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
  v.back() = hi;
  return v;
}

double wigner_generic(const ComplexProfile& psi, double z, double k, double B, const QuadratureSpec& spec) {
  if (!(B > 0.0)) return 0.0;
  auto f = [&](double zp) {
    const std::complex<double> prod = std::conj(psi(z + 0.5 * zp)) * psi(z - 0.5 * zp);
    return std::cos(k * zp) * prod.real() - std::sin(k * zp) * prod.imag();
  };
  return value_or_throw(integrate_panelized(f, 0.0, B, k, spec), "Wigner integral") / std::numbers::pi;
}

double wigner_real(const RealProfile& psi, double z, double k, double B, const QuadratureSpec& spec) {
  if (!(B > 0.0)) return 0.0;
  auto f = [&](double zp) { return std::cos(k * zp) * psi(z + 0.5 * zp) * psi(z - 0.5 * zp); };
  return value_or_throw(integrate_panelized(f, 0.0, B, k, spec), "Wigner integral") / std::numbers::pi;
}

double wigner_position_marginal(const ComplexProfile& psi, double z, double B, double K,
                                const QuadratureSpec& spec) {
  if (!(B > 0.0)) return 0.0;
  auto f = [&](double zp) {
    const double r = (std::conj(psi(z + 0.5 * zp)) * psi(z - 0.5 * zp)).real();
    const double kernel = zp == 0.0 ? K : std::sin(K * zp) / zp;
    return r * kernel;
  };
  return 2.0 / std::numbers::pi * value_or_throw(integrate_panelized(f, 0.0, B, K, spec), "position marginal");
}

double wigner_momentum_marginal(const std::function<double(double, double)>& W, double k, double z_lo,
                                double z_hi, const QuadratureSpec& spec, std::span<const double> breakpoints) {
  auto f = [&](double z) { return W(z, k); };
  return value_or_throw(integrate(f, z_lo, z_hi, spec, breakpoints), "momentum marginal");
}

double single_limit(const EnergyLevel& lv, double zeta, const QuadratureSpec& spec) {
  if (!(zeta > 0.0)) return 0.0;
  const double cut = std::abs(lv.a_n) + spec.tail_pad;
  return std::max(0.0, std::min(2.0 * zeta, 2.0 * (cut - zeta)));
}

double double_mirror_limit(const DoubleMirrorMode& mode, double z) {
  if (z <= 0.0 || z >= mode.L) return 0.0;
  return z <= 0.5 * mode.L ? 2.0 * z : 2.0 * (mode.L - z);
}

double region2_limit(const Region2Expansion& e, double z, const QuadratureSpec& spec) {
  if (!(z > 0.0)) return 0.0;
  return std::max(0.0, std::min(2.0 * z, 2.0 * (region2_extent(e, spec) - z)));
}

double wigner_single(const EnergyLevel& lv, double zeta, double k, bool normalized, const QuadratureSpec& spec) {
  const double a = lv.a_n;
  const double scale = normalized ? 1.0 / level_slope(lv) : 1.0;
  auto psi = [a, scale](double x) { return x > 0.0 ? scale * airy_ai(x + a) : 0.0; };
  return wigner_real(psi, zeta, k, single_limit(lv, zeta, spec), spec);
}

double wigner_superposition_averaged(const SuperpositionSpec& sp, double zeta, double k,
                                     const QuadratureSpec& spec) {
  sp.validate();
  return sp.p1 * wigner_single(sp.l1, zeta, k, sp.normalized, spec) +
         sp.p2 * wigner_single(sp.l2, zeta, k, sp.normalized, spec);
}

double wigner_superposition(const SuperpositionSpec& sp, const ScaleSystem& s, double zeta, double k, double t,
                            const QuadratureSpec& spec) {
  const double diagonal = wigner_superposition_averaged(sp, zeta, k, spec);
  if (sp.p1 == 0.0 || sp.p2 == 0.0 || !(zeta > 0.0)) return diagonal;
  const double s1 = sp.normalized ? 1.0 / level_slope(sp.l1) : 1.0;
  const double s2 = sp.normalized ? 1.0 / level_slope(sp.l2) : 1.0;
  const double a1 = sp.l1.a_n, a2 = sp.l2.a_n;
  const double cut = std::max(std::abs(a1), std::abs(a2)) + spec.tail_pad;
  const double B = std::max(0.0, std::min(2.0 * zeta, 2.0 * (cut - zeta)));
  if (!(B > 0.0)) return diagonal;
  const double beat = (sp.l1.E_n - sp.l2.E_n) * t / s.hbar_peV_s;
  auto f = [&](double zp) {
    const double up = zeta + 0.5 * zp, down = zeta - 0.5 * zp;
    if (!(up > 0.0) || !(down > 0.0)) return 0.0;
    return s1 * airy_ai(up + a1) * s2 * airy_ai(down + a2) * std::cos(beat + zp * k);
  };
  const double cross = value_or_throw(integrate_panelized(f, -B, B, k, spec), "superposition Wigner cross term");
  return diagonal + std::sqrt(sp.p1 * sp.p2) * cross / std::numbers::pi;
}

double wigner_double_mirror(const DoubleMirrorMode& mode, double z, double k, const QuadratureSpec& spec) {
  auto psi = [&mode](double x) { return mode_value(mode, x); };
  return wigner_real(psi, z, k, double_mirror_limit(mode, z), spec);
}

double wigner_region2(const Region2Expansion& e, double z, double k, double t, const QuadratureSpec& spec) {
  const Coefficients c = propagated_coefficients(e, t);
  const double z0 = e.scales().z0;
  auto psi = [&](double x) { return evaluate_coefficients(e.levels, z0, c, x); };
  return wigner_generic(psi, z, k, region2_limit(e, z, spec), spec);
}

std::vector<double> wigner_row(const ComplexProfile& psi, double z, std::span<const double> k_axis, double B,
                               double omega) {
  std::vector<double> row(k_axis.size(), 0.0);
  if (!(B > 0.0)) return row;
  double kmax = 0.0;
  for (double k : k_axis) kmax = std::max(kmax, std::abs(k));
  const FixedRule rule = composite_gauss_legendre(0.0, B, std::numbers::pi / (kmax + omega));
  std::vector<double> re(rule.x.size()), im(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const std::complex<double> p = std::conj(psi(z + 0.5 * rule.x[i])) * psi(z - 0.5 * rule.x[i]);
    re[i] = rule.w[i] * p.real();
    im[i] = rule.w[i] * p.imag();
  }
  for (std::size_t j = 0; j < k_axis.size(); ++j) {
    const double k = k_axis[j];
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      acc += std::cos(k * rule.x[i]) * re[i] - std::sin(k * rule.x[i]) * im[i];
    }
    row[j] = acc / std::numbers::pi;
  }
  return row;
}

namespace {

void check_axes(const std::vector<double>& z_axis, const std::vector<double>& k_axis) {
  for (const auto* axis : {&z_axis, &k_axis}) {
    if (axis->empty()) throw DomainError("Wigner grid: empty axis");
    for (std::size_t i = 1; i < axis->size(); ++i) {
      if (!((*axis)[i] > (*axis)[i - 1])) throw DomainError("Wigner grid: axes must be strictly increasing");
    }
  }
}

PhaseSpaceGrid rows(std::vector<double> z_axis, std::vector<double> k_axis, AxisUnit unit,
                    const std::function<std::vector<double>(double, std::span<const double>)>& row) {
  check_axes(z_axis, k_axis);
  PhaseSpaceGrid g;
  g.z_axis = std::move(z_axis);
  g.k_axis = std::move(k_axis);
  g.unit = unit;
  const std::size_t nk = g.k_axis.size();
  g.W.assign(g.z_axis.size() * nk, 0.0);
  parallel_for(g.z_axis.size(), [&](std::size_t iz) {
    const std::vector<double> r = row(g.z_axis[iz], g.k_axis);
    std::copy(r.begin(), r.end(), g.W.begin() + static_cast<std::ptrdiff_t>(iz * nk));
  });
  return g;
}

double trapezoid_weight(const std::vector<double>& axis, std::size_t i) {
  if (axis.size() < 2) return 0.0;
  const double left = i > 0 ? axis[i] - axis[i - 1] : 0.0;
  const double right = i + 1 < axis.size() ? axis[i + 1] - axis[i] : 0.0;
  return 0.5 * (left + right);
}

}  // namespace

PhaseSpaceGrid wigner_grid_single(const EnergyLevel& lv, std::vector<double> zeta_axis, std::vector<double> k_axis,
                                  bool normalized, const QuadratureSpec& spec) {
  const double a = lv.a_n;
  const double scale = normalized ? 1.0 / level_slope(lv) : 1.0;
  ComplexProfile psi = [a, scale](double x) { return x > 0.0 ? scale * airy_ai(x + a) : 0.0; };
  const double omega = std::sqrt(std::abs(a)) + 1.0;
  return rows(std::move(zeta_axis), std::move(k_axis), AxisUnit::scaled,
              [&](double zeta, std::span<const double> ks) {
                return wigner_row(psi, zeta, ks, single_limit(lv, zeta, spec), omega);
              });
}

PhaseSpaceGrid wigner_grid_superposition(const SuperpositionSpec& sp, const ScaleSystem& s, double t,
                                         std::vector<double> zeta_axis, std::vector<double> k_axis,
                                         const QuadratureSpec& spec) {
  sp.validate();
  const double s1 = sp.normalized ? 1.0 / level_slope(sp.l1) : 1.0;
  const double s2 = sp.normalized ? 1.0 / level_slope(sp.l2) : 1.0;
  const double a1 = sp.l1.a_n, a2 = sp.l2.a_n;
  const double r1 = std::sqrt(sp.p1) * s1, r2 = std::sqrt(sp.p2) * s2;
  const double phase = -sp.l1.E_n * t / s.hbar_peV_s, phase2 = -sp.l2.E_n * t / s.hbar_peV_s;
  // Pure state sqrt(p1) psi1 e^{-i E1 t} + sqrt(p2) psi2 e^{-i E2 t}; equals the
  // cross-term form of wigner_superposition.
  ComplexProfile psi = [=](double x) -> std::complex<double> {
    if (!(x > 0.0)) return 0.0;
    return r1 * airy_ai(x + a1) * std::polar(1.0, phase) + r2 * airy_ai(x + a2) * std::polar(1.0, phase2);
  };
  const double cut = std::max(std::abs(a1), std::abs(a2)) + spec.tail_pad;
  const double omega = std::sqrt(std::max(std::abs(a1), std::abs(a2))) + 1.0;
  return rows(std::move(zeta_axis), std::move(k_axis), AxisUnit::scaled,
              [&](double zeta, std::span<const double> ks) {
                const double B = zeta > 0.0 ? std::max(0.0, std::min(2.0 * zeta, 2.0 * (cut - zeta))) : 0.0;
                return wigner_row(psi, zeta, ks, B, omega);
              });
}

PhaseSpaceGrid wigner_grid_double_mirror(const DoubleMirrorMode& mode, std::vector<double> z_axis,
                                         std::vector<double> k_axis) {
  ComplexProfile psi = [&mode](double x) { return mode_value(mode, x); };
  const double z0 = mode.scales.z0;
  const double omega = (std::sqrt(mode.z_bar / z0) + 1.0) / z0;
  return rows(std::move(z_axis), std::move(k_axis), AxisUnit::micrometre,
              [&](double z, std::span<const double> ks) {
                return wigner_row(psi, z, ks, double_mirror_limit(mode, z), omega);
              });
}

PhaseSpaceGrid wigner_grid_region2(const Region2Expansion& e, double t, std::vector<double> z_axis,
                                   std::vector<double> k_axis, const QuadratureSpec& spec) {
  const Coefficients c = propagated_coefficients(e, t);
  const double z0 = e.scales().z0;
  ComplexProfile psi = [&](double x) { return evaluate_coefficients(e.levels, z0, c, x); };
  const double omega = (std::sqrt(std::abs(e.levels.back().a_n)) + 1.0) / z0;
  return rows(std::move(z_axis), std::move(k_axis), AxisUnit::micrometre,
              [&](double z, std::span<const double> ks) {
                return wigner_row(psi, z, ks, region2_limit(e, z, spec), omega);
              });
}

double grid_integral(const PhaseSpaceGrid& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.z_axis.size(); ++i) {
    const double wz = trapezoid_weight(g.z_axis, i);
    for (std::size_t j = 0; j < g.k_axis.size(); ++j) acc += wz * trapezoid_weight(g.k_axis, j) * g.at(i, j);
  }
  return acc;
}

double grid_square_integral(const PhaseSpaceGrid& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.z_axis.size(); ++i) {
    const double wz = trapezoid_weight(g.z_axis, i);
    for (std::size_t j = 0; j < g.k_axis.size(); ++j) {
      acc += wz * trapezoid_weight(g.k_axis, j) * g.at(i, j) * g.at(i, j);
    }
  }
  return acc;
}

PhaseSpaceGrid wigner_grid(const std::function<double(double, double)>& W, std::vector<double> z_axis,
                           std::vector<double> k_axis, AxisUnit unit) {
  check_axes(z_axis, k_axis);
  PhaseSpaceGrid g;
  g.z_axis = std::move(z_axis);
  g.k_axis = std::move(k_axis);
  g.unit = unit;
  const std::size_t nk = g.k_axis.size();
  g.W.assign(g.z_axis.size() * nk, 0.0);
  parallel_for(g.z_axis.size(), [&](std::size_t iz) {
    for (std::size_t ik = 0; ik < nk; ++ik) g.W[iz * nk + ik] = W(g.z_axis[iz], g.k_axis[ik]);
  });
  return g;
}

}  // namespace qbounce
