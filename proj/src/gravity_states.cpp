#include "qbounce/gravity_states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qbounce {

ScaleSystem make_scales(const PhysicalConstants& c) {
  if (!(c.m_N > 0.0) || !(c.g > 0.0) || !(c.hbar > 0.0)) {
    throw DomainError("make_scales: constants must be positive");
  }
  ScaleSystem s;
  s.m_N = c.m_N;
  s.g = c.g;
  s.hbar = c.hbar;
  s.z0 = std::cbrt(c.hbar * c.hbar / (2.0 * c.m_N * c.m_N * c.g)) * 1e6;
  s.E0 = std::cbrt(c.hbar * c.hbar * c.m_N * c.g * c.g / 2.0) / kJoulePerPeV;
  s.hbar_peV_s = c.hbar / kJoulePerPeV;
  return s;
}

EnergyLevel level(const ScaleSystem& s, int n) {
  const double a = airy_zero(n).a_n;
  return {n, a, -a * s.E0, -a * s.z0};
}

std::vector<EnergyLevel> levels(const ScaleSystem& s, int n_max) {
  if (n_max < 1 || n_max > 200) throw DomainError("levels: n_max must lie in [1, 200]");
  std::vector<EnergyLevel> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) out.push_back(level(s, n));
  return out;
}

double level_slope(const EnergyLevel& lv) { return airy_eval(lv.a_n).ai_prime; }

double eigenfunction(const EnergyLevel& lv, const ScaleSystem& s, double zeta, bool normalized) {
  if (!(zeta > 0.0)) return 0.0;
  const double v = airy_ai(zeta + lv.a_n);
  return normalized ? v / (std::sqrt(s.z0) * level_slope(lv)) : v;
}

double eigenfunction_scaled(const EnergyLevel& lv, double zeta) {
  if (!(zeta > 0.0)) return 0.0;
  return airy_ai(zeta + lv.a_n) / level_slope(lv);
}

MomentumComponents momentum_components(const EnergyLevel& lv, double k, bool normalized,
                                       const QuadratureSpec& spec) {
  const double end = std::abs(lv.a_n) + spec.tail_pad;
  const double a = lv.a_n;
  auto f = [a](double zeta) { return airy_ai(zeta + a); };
  const std::string ctx = "momentum transform of level " + std::to_string(lv.n);
  const double c = value_or_throw(oscillatory_integrate(f, k, TrigKind::cosine, 0.0, end, spec), ctx);
  const double sn = value_or_throw(oscillatory_integrate(f, k, TrigKind::sine, 0.0, end, spec), ctx);
  double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  if (normalized) scale /= level_slope(lv);
  return {c * scale, sn * scale};
}

std::complex<double> momentum_amplitude(const EnergyLevel& lv, double k, bool normalized,
                                        const QuadratureSpec& spec) {
  const MomentumComponents m = momentum_components(lv, k, normalized, spec);
  return {m.c, -m.s};
}

double momentum_spectrum(const EnergyLevel& lv, double k, bool normalized, const QuadratureSpec& spec) {
  const MomentumComponents m = momentum_components(lv, k, normalized, spec);
  return m.c * m.c + m.s * m.s;
}

double physical_momentum(const ScaleSystem& s, double k) { return s.hbar * k / (s.z0 * 1e-6); }

double scaled_wavenumber(const ScaleSystem& s, double k_p) { return k_p * (s.z0 * 1e-6) / s.hbar; }

void SuperpositionSpec::validate() const {
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12) {
    throw DomainError("superposition: p1, p2 must be non-negative and sum to 1");
  }
}

double beat_frequency(const ScaleSystem& s, const EnergyLevel& l1, const EnergyLevel& l2) {
  return (l2.E_n - l1.E_n) / s.hbar_peV_s;
}

namespace {

double state_value(const SuperpositionSpec& sp, const EnergyLevel& lv, double zeta) {
  if (sp.normalized) return eigenfunction_scaled(lv, zeta);
  return zeta > 0.0 ? airy_ai(zeta + lv.a_n) : 0.0;
}

}  // namespace

double superposition_density(const SuperpositionSpec& sp, const ScaleSystem& s, double zeta, double t) {
  sp.validate();
  const double u1 = state_value(sp, sp.l1, zeta);
  const double u2 = state_value(sp, sp.l2, zeta);
  const double phase = (sp.l1.E_n - sp.l2.E_n) * t / s.hbar_peV_s;
  return sp.p1 * u1 * u1 + sp.p2 * u2 * u2 + 2.0 * std::sqrt(sp.p1 * sp.p2) * u1 * u2 * std::cos(phase);
}

double superposition_density_averaged(const SuperpositionSpec& sp, double zeta) {
  sp.validate();
  const double u1 = state_value(sp, sp.l1, zeta);
  const double u2 = state_value(sp, sp.l2, zeta);
  return sp.p1 * u1 * u1 + sp.p2 * u2 * u2;
}

double superposition_momentum_density(const SuperpositionSpec& sp, const ScaleSystem& s, double k,
                                      double t, const QuadratureSpec& spec) {
  sp.validate();
  return superposition_momentum_density(sp, s, momentum_components(sp.l1, k, sp.normalized, spec),
                                        momentum_components(sp.l2, k, sp.normalized, spec), t);
}

double superposition_momentum_density(const SuperpositionSpec& sp, const ScaleSystem& s,
                                      const MomentumComponents& f1, const MomentumComponents& f2, double t) {
  const double phase = (sp.l1.E_n - sp.l2.E_n) * t / s.hbar_peV_s;
  const double direct = sp.p1 * (f1.c * f1.c + f1.s * f1.s) + sp.p2 * (f2.c * f2.c + f2.s * f2.s);
  const double cross = std::cos(phase) * (f1.c * f2.c + f1.s * f2.s) -
                       std::sin(phase) * (f1.s * f2.c - f1.c * f2.s);
  return direct + 2.0 * std::sqrt(sp.p1 * sp.p2) * cross;
}

double superposition_momentum_density_averaged(const SuperpositionSpec& sp, double k,
                                               const QuadratureSpec& spec) {
  sp.validate();
  const MomentumComponents f1 = momentum_components(sp.l1, k, sp.normalized, spec);
  const MomentumComponents f2 = momentum_components(sp.l2, k, sp.normalized, spec);
  return sp.p1 * (f1.c * f1.c + f1.s * f1.s) + sp.p2 * (f2.c * f2.c + f2.s * f2.s);
}

}  // namespace qbounce
