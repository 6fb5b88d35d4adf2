#include "qbounce/double_mirror.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbounce/roots.hpp"

namespace qbounce {
namespace {

// Determinant and its z_bar-derivative, both divided by the Airy modulus at the
// upper mirror so that neither overflows for wide slits.  The ratio (and hence
// the Newton step) is unaffected by the common positive factor.
std::pair<double, double> scaled_determinant(const ScaleSystem& s, double L, double z_bar) {
  const AiryValue lo = airy_eval(-z_bar / s.z0);
  const AiryValue up = airy_eval((L - z_bar) / s.z0);
  double ai1 = up.ai, bi1 = up.bi, ai1p = up.ai_prime, bi1p = up.bi_prime;
  const double modulus = std::hypot(ai1, bi1);
  if (std::isfinite(modulus) && modulus > 0.0) {
    ai1 /= modulus;
    bi1 /= modulus;
    ai1p /= modulus;
    bi1p /= modulus;
  } else {
    // Bi overflowed: only its ratio to the derivative survives.
    const double r = up.bi_prime / up.bi;
    ai1 = 0.0;
    ai1p = 0.0;
    bi1 = 1.0;
    bi1p = std::isfinite(r) ? r : std::sqrt((L - z_bar) / s.z0);
  }
  const double det = lo.ai * bi1 - lo.bi * ai1;
  const double ddet = -(lo.ai_prime * bi1 + lo.ai * bi1p - lo.bi_prime * ai1 - lo.bi * ai1p) / s.z0;
  return {det, ddet};
}

DoubleMirrorMode build_mode(const ScaleSystem& s, double L, int m, double z_bar) {
  DoubleMirrorMode md;
  md.m = m;
  md.L = L;
  md.z_bar = z_bar;
  md.E_bar = z_bar * s.weight();
  md.scales = s;
  const double x0 = -z_bar / s.z0;
  const double x1 = (L - z_bar) / s.z0;
  const AiryValue lo = airy_eval(x0);
  const AiryValue up = airy_eval(x1);
  md.a = lo.ai;
  md.b = lo.bi;
  md.a_eval = md.a;
  if (x1 > 0.0) {
    const double ratio = std::isfinite(up.bi) ? up.ai / up.bi : 0.0;
    md.a_eval = md.b * ratio;
  }
  md.dy0 = md.b * lo.ai_prime - md.a_eval * lo.bi_prime;
  const double dyl_bi = std::isfinite(up.bi_prime) ? md.a_eval * up.bi_prime : 0.0;
  md.dyL = md.b * up.ai_prime - dyl_bi;
  const double n2 = md.dy0 * md.dy0 - md.dyL * md.dyL;
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NumericalError("solve_modes: N_m^2 = " + std::to_string(n2) + " is not positive for m = " +
                         std::to_string(m));
  }
  md.N = std::sqrt(n2);
  md.sign = md.dy0 >= 0.0 ? 1.0 : -1.0;
  return md;
}

}  // namespace

double DoubleMirrorMode::c_bar() const { return sign / (std::sqrt(scales.z0) * N); }

double mode_determinant(const ScaleSystem& s, double L, double z_bar) {
  const AiryValue lo = airy_eval(-z_bar / s.z0);
  const AiryValue up = airy_eval((L - z_bar) / s.z0);
  return lo.ai * up.bi - lo.bi * up.ai;
}

std::vector<DoubleMirrorMode> solve_modes(const ScaleSystem& s, double L, int m_max) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("solve_modes: L must be positive");
  if (m_max < 1 || m_max > 20) throw DomainError("solve_modes: m_max must lie in [1, 20]");

  // z0/4 resolves every root while the spacing of the gravity-dominated levels,
  // about pi z0 / sqrt(L/z0), stays above it; wider slits get a finer scan.
  const double step = 0.25 * s.z0 / std::max(1.0, 0.25 * std::sqrt(L / s.z0));
  auto fdf = [&](double zb) { return scaled_determinant(s, L, zb); };

  std::vector<DoubleMirrorMode> modes;
  double z_lo = 0.0;
  double f_lo = fdf(z_lo).first;
  const double z_limit = 1e4 * (L + s.z0);
  while (static_cast<int>(modes.size()) < m_max) {
    const double z_hi = z_lo + step;
    if (z_hi > z_limit) {
      throw NumericalError("solve_modes: could not bracket mode m = " +
                           std::to_string(modes.size() + 1));
    }
    const double f_hi = fdf(z_hi).first;
    if (f_hi == 0.0 || (f_lo > 0.0) != (f_hi > 0.0)) {
      const double root =
          f_hi == 0.0 ? z_hi : detail::safeguarded_newton(fdf, z_lo, z_hi, 0.5 * (z_lo + z_hi), 1e-15);
      modes.push_back(build_mode(s, L, static_cast<int>(modes.size()) + 1, root));
    }
    z_lo = z_hi;
    f_lo = f_hi;
  }
  return modes;
}

double mode_profile(const DoubleMirrorMode& mode, double z) {
  if (z < 0.0 || z > mode.L) return 0.0;
  const AiryValue v = airy_eval((z - mode.z_bar) / mode.scales.z0);
  const double bi_term = mode.a_eval == 0.0 ? 0.0 : mode.a_eval * v.bi;
  return mode.b * v.ai - bi_term;
}

double mode_value(const DoubleMirrorMode& mode, double z) { return mode.c_bar() * mode_profile(mode, z); }

std::complex<double> mode_wavefunction(const DoubleMirrorMode& mode, double z, double t) {
  const double phase = mode.E_bar * t / mode.scales.hbar_peV_s;
  return mode_value(mode, z) * std::complex<double>(std::cos(phase), -std::sin(phase));
}

MomentumComponents mode_alpha(const DoubleMirrorMode& mode, double k, const QuadratureSpec& spec) {
  if (!std::isfinite(k) || std::abs(k) * mode.scales.z0 > spec.k_max) {
    throw DomainError("mode_alpha: |k| z0 exceeds k_max");
  }
  auto y = [&](double z) { return mode_profile(mode, z); };
  const std::string ctx = "double-mirror transform of mode " + std::to_string(mode.m);
  // Tolerances refer to the normalised amplitude; y itself is larger by 1/Cbar.
  QuadratureSpec local = spec;
  local.abs_tol = spec.abs_tol / std::abs(mode.c_bar());
  local.k_max = INFINITY;
  const double c = value_or_throw(oscillatory_integrate(y, k, TrigKind::cosine, 0.0, mode.L, local), ctx);
  const double sn = value_or_throw(oscillatory_integrate(y, k, TrigKind::sine, 0.0, mode.L, local), ctx);
  return {c, sn};
}

std::complex<double> mode_momentum_amplitude(const DoubleMirrorMode& mode, double k, double t,
                                             const QuadratureSpec& spec) {
  const MomentumComponents al = mode_alpha(mode, k, spec);
  const double phase = mode.E_bar * t / mode.scales.hbar_peV_s;
  const std::complex<double> cm =
      mode.c_bar() / std::sqrt(2.0 * std::numbers::pi) * std::complex<double>(std::cos(phase), -std::sin(phase));
  return cm * std::complex<double>(al.c, -al.s);
}

double mode_spectral_function(const DoubleMirrorMode& mode, double k, const QuadratureSpec& spec) {
  const MomentumComponents al = mode_alpha(mode, k, spec);
  const double cbar = mode.c_bar();
  return cbar * cbar / (2.0 * std::numbers::pi) * (al.c * al.c + al.s * al.s);
}

}  // namespace qbounce
