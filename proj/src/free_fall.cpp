#include "qbounce/free_fall.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbounce/parallel.hpp"

namespace qbounce {

double closed_form_coefficient(const DoubleMirrorMode& mode, double h, const EnergyLevel& lv) {
  const double z0 = mode.scales.z0;
  const double L = mode.L;
  const double denom = lv.z_n - mode.z_bar - h;
  const double slope = level_slope(lv);
  const double upper = mode.dyL * (airy_ai((L + h - lv.z_n) / z0) - airy_ai((L - mode.z_bar) / z0));
  const double lower = mode.dy0 * (airy_ai((h - lv.z_n) / z0) - mode.a);
  return (upper - lower) * (z0 / denom) / (slope * slope);
}

double overlap_coefficient(const DoubleMirrorMode& mode, double h, const EnergyLevel& lv,
                           const QuadratureSpec& spec) {
  const double z0 = mode.scales.z0;
  const double slope = level_slope(lv);
  auto f = [&](double z) { return airy_ai((z - lv.z_n) / z0) * mode_profile(mode, z - h); };
  QuadratureSpec local = spec;
  local.abs_tol = spec.abs_tol * z0 * slope * slope;
  const double zbar = mode.z_bar + h;
  const double mid[] = {std::clamp(zbar, h, h + mode.L), std::clamp(lv.z_n, h, h + mode.L)};
  const double integral =
      value_or_throw(integrate(f, h, h + mode.L, local, mid), "overlap coefficient n = " + std::to_string(lv.n));
  return integral / (z0 * slope * slope);
}

Region2Expansion expansion_coefficients(const DoubleMirrorMode& mode, double h, int N,
                                        const QuadratureSpec& spec) {
  if (N < 1) throw DomainError("expansion_coefficients: N must be >= 1");
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("expansion_coefficients: h must be >= 0");
  Region2Expansion e;
  e.mode = mode;
  e.h = h;
  e.N = N;
  e.levels = levels(mode.scales, N);
  for (const EnergyLevel& lv : e.levels) {
    e.slopes.push_back(level_slope(lv));
    if (std::abs(lv.z_n - mode.z_bar - h) < 1e-6 * mode.scales.z0) {
      e.fallback.push_back(lv.n);
      e.D.push_back(overlap_coefficient(mode, h, lv, spec));
    } else {
      e.D.push_back(closed_form_coefficient(mode, h, lv));
    }
  }
  return e;
}

double region1_value(const DoubleMirrorMode& mode, double h, double z) {
  if (z < h || z > h + mode.L) return 0.0;
  return mode_value(mode, z - h);
}

std::complex<double> region1_wavefunction(const DoubleMirrorMode& mode, double h, double z, double t) {
  const double phase = mode.E_bar * t / mode.scales.hbar_peV_s;
  return region1_value(mode, h, z) * std::complex<double>(std::cos(phase), -std::sin(phase));
}

std::complex<double> evolution_factor(double E, double t, const ScaleSystem& s) {
  const double phase = E * t / s.hbar_peV_s;
  return {std::cos(phase), -std::sin(phase)};
}

Coefficients propagated_coefficients(const Region2Expansion& e, double t) {
  Coefficients c(e.D.size());
  const double cbar = e.c_bar();
  for (std::size_t i = 0; i < e.D.size(); ++i) {
    c[i] = cbar * (evolution_factor(e.levels[i].E_n, t, e.scales()) * std::complex<double>(e.D[i], 0.0));
  }
  return c;
}

std::complex<double> evaluate_coefficients(const std::vector<EnergyLevel>& levels, double z0,
                                           const Coefficients& c, double z) {
  if (z < 0.0) return 0.0;
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * airy_ai((z - levels[i].z_n) / z0);
  return sum;
}

TrigParts region2_components(const Region2Expansion& e, double z, double t) {
  const std::complex<double> psi = region2_wavefunction(e, z, t);
  return {psi.real(), -psi.imag()};
}

std::complex<double> region2_wavefunction(const Region2Expansion& e, double z, double t) {
  return evaluate_coefficients(e.levels, e.scales().z0, propagated_coefficients(e, t), z);
}

double spatial_density(const Region2Expansion& e, double z, double t) {
  return std::norm(region2_wavefunction(e, z, t));
}

double region2_extent(const Region2Expansion& e, const QuadratureSpec& spec) {
  return e.levels.back().z_n + spec.tail_pad * e.scales().z0;
}

double continuity_residual(const Region2Expansion& e, const QuadratureSpec& spec) {
  const double top = e.h + e.mode.L + 3.0 * e.scales().z0;
  const Coefficients c = propagated_coefficients(e, 0.0);
  auto f = [&](double z) {
    const double d = region1_value(e.mode, e.h, z) - evaluate_coefficients(e.levels, e.scales().z0, c, z).real();
    return d * d;
  };
  const double cuts[] = {e.h, e.h + e.mode.L};
  return std::sqrt(value_or_throw(integrate(f, 0.0, top, spec, cuts), "continuity residual"));
}

double region2_norm(const Region2Expansion& e, double t, const QuadratureSpec& spec) {
  const Coefficients c = propagated_coefficients(e, t);
  auto f = [&](double z) { return std::norm(evaluate_coefficients(e.levels, e.scales().z0, c, z)); };
  std::vector<double> cuts;
  for (const auto& lv : e.levels) cuts.push_back(lv.z_n);
  return value_or_throw(integrate(f, 0.0, region2_extent(e, spec), spec, cuts), "region II norm");
}

namespace {

void check_shared_basis(const Region2Expansion& e1, const Region2Expansion& e2) {
  if (e1.N != e2.N || e1.scales().z0 != e2.scales().z0) {
    throw DomainError("mixture: both expansions must use the same basis");
  }
}

void check_probabilities(double p1, double p2) {
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12) {
    throw DomainError("mixture: p1, p2 must be non-negative and sum to 1");
  }
}

}  // namespace

Coefficients coherent_coefficients(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                                   double p2, double t) {
  check_shared_basis(e1, e2);
  check_probabilities(p1, p2);
  const Coefficients c1 = propagated_coefficients(e1, t);
  const Coefficients c2 = propagated_coefficients(e2, t);
  Coefficients c(c1.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::sqrt(p1) * c1[i] + std::sqrt(p2) * c2[i];
  return c;
}

TrigParts coherent_components(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                              double p2, double z, double t) {
  const std::complex<double> psi =
      evaluate_coefficients(e1.levels, e1.scales().z0, coherent_coefficients(e1, e2, p1, p2, t), z);
  return {psi.real(), -psi.imag()};
}

double coherent_mixture_density(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                                double p2, double z, double t) {
  const TrigParts h = coherent_components(e1, e2, p1, p2, z, t);
  return h.c * h.c + h.s * h.s;
}

double incoherent_mixture_density(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                                  double p2, double z, double t) {
  check_probabilities(p1, p2);
  return p1 * spatial_density(e1, z, t) + p2 * spatial_density(e2, z, t);
}

MomentumComponents airy_transform(const EnergyLevel& lv, double z0, double k, const QuadratureSpec& spec) {
  const double ks = k * z0;
  const double a = lv.a_n;
  auto f = [a](double zeta) { return airy_ai(zeta + a); };
  const double end = std::abs(a) + spec.tail_pad;
  const std::string ctx = "region II transform n = " + std::to_string(lv.n);
  QuadratureSpec local = spec;
  local.abs_tol = spec.abs_tol / z0;
  const double c = value_or_throw(oscillatory_integrate(f, ks, TrigKind::cosine, 0.0, end, local), ctx);
  const double s = value_or_throw(oscillatory_integrate(f, ks, TrigKind::sine, 0.0, end, local), ctx);
  return {z0 * c, z0 * s};
}

std::vector<MomentumComponents> basis_transforms(const std::vector<EnergyLevel>& levels, double z0,
                                                 double k, const QuadratureSpec& spec) {
  std::vector<MomentumComponents> out;
  out.reserve(levels.size());
  for (const auto& lv : levels) out.push_back(airy_transform(lv, z0, k, spec));
  return out;
}

TransformTable::TransformTable(const std::vector<EnergyLevel>& levels, double z0, std::vector<double> k_axis,
                               const QuadratureSpec& spec)
    : k_axis_(std::move(k_axis)), basis_(static_cast<int>(levels.size())), table_(k_axis_.size()) {
  parallel_for(k_axis_.size(), [&](std::size_t ik) { table_[ik] = basis_transforms(levels, z0, k_axis_[ik], spec); });
}

std::complex<double> momentum_from_coefficients(const Coefficients& c, const std::vector<MomentumComponents>& f) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * std::complex<double>(f[i].c, -f[i].s);
  return sum / std::sqrt(2.0 * std::numbers::pi);
}

std::complex<double> region2_momentum_amplitude(const Region2Expansion& e, double k, double t,
                                                const QuadratureSpec& spec) {
  return momentum_from_coefficients(propagated_coefficients(e, t),
                                    basis_transforms(e.levels, e.scales().z0, k, spec));
}

double momentum_density(const Region2Expansion& e, double k, double t, const QuadratureSpec& spec) {
  return std::norm(region2_momentum_amplitude(e, k, t, spec));
}

double momentum_density(const Region2Expansion& e, const TransformTable& table, std::size_t ik, double t) {
  return std::norm(momentum_from_coefficients(propagated_coefficients(e, t), table.at(ik)));
}

}  // namespace qbounce
