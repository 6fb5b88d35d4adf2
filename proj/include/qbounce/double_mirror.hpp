#pragma once
// Bound states between a lower mirror at z = 0 and an upper mirror at z = L.
//
// Mode m is y((z - zbar_m)/z0) with y = b_m Ai - a_m Bi, a_m = Ai(-zbar_m/z0),
// b_m = Bi(-zbar_m/z0), so y vanishes at z = 0 by construction and the
// eigenvalue condition is y((L - zbar_m)/z0) = 0.  Wavenumbers here are
// dimensional (1/um).

#include <complex>
#include <vector>

#include "qbounce/gravity_states.hpp"

namespace qbounce {

struct DoubleMirrorMode {
  int m = 0;
  double L = 0.0;      // um
  double E_bar = 0.0;  // peV
  double z_bar = 0.0;  // um
  double a = 0.0;      // Ai(-zbar/z0)
  double b = 0.0;      // Bi(-zbar/z0)
  double N = 0.0;      // norm constant, positive
  double sign = 1.0;   // overall sign making d psi/dz > 0 at z = 0
  // Coefficient of Bi used when evaluating y.  Equals `a` up to the root
  // tolerance; taken from the upper boundary condition when zbar < L, where
  // Bi grows across the slit and the lower-boundary value is ill-conditioned.
  double a_eval = 0.0;
  double dy0 = 0.0;  // y'(-zbar/z0)
  double dyL = 0.0;  // y'((L - zbar)/z0)
  ScaleSystem scales;

  /// Cbar_m = sign / (sqrt(z0) N): maps y to the normalised wave function.
  double c_bar() const;
};

/// First m_max modes for slit width L (um), ordered by energy.
std::vector<DoubleMirrorMode> solve_modes(const ScaleSystem& s, double L, int m_max);

/// Boundary determinant Ai(-zbar/z0) Bi((L-zbar)/z0) - Bi(-zbar/z0) Ai((L-zbar)/z0).
double mode_determinant(const ScaleSystem& s, double L, double z_bar);

/// Unnormalised profile y((z - zbar)/z0) on [0, L], zero outside.
double mode_profile(const DoubleMirrorMode& mode, double z);

/// Real stationary wave function (per sqrt(um)).
double mode_value(const DoubleMirrorMode& mode, double z);

/// psi_m(z, t) including the phase exp(-i Ebar t / hbar).
std::complex<double> mode_wavefunction(const DoubleMirrorMode& mode, double z, double t);

/// alpha_c(k, m), alpha_s(k, m): cosine and sine transforms of y over [0, L].
MomentumComponents mode_alpha(const DoubleMirrorMode& mode, double k, const QuadratureSpec& spec = {});

/// F_m(k, t) = C_m(t) (alpha_c - i alpha_s), C_m(t) = Cbar_m exp(-i Ebar t/hbar) / sqrt(2 pi).
std::complex<double> mode_momentum_amplitude(const DoubleMirrorMode& mode, double k, double t = 0.0,
                                             const QuadratureSpec& spec = {});

/// |F_m(k)|^2, independent of t.
double mode_spectral_function(const DoubleMirrorMode& mode, double k, const QuadratureSpec& spec = {});

}  // namespace qbounce
