#pragma once
// Single-mirror gravitational states: physical scales, the Airy eigenstates
// psi_n, their Fourier amplitudes, and the two-level superposition.
//
// Units: lengths in micrometres, energies in peV, times in seconds.  The
// single-mirror formulas work in the scaled height zeta = z / z0 and the scaled
// wavenumber k (physical momentum k_p = hbar k / z0).

#include <complex>
#include <vector>

#include "qbounce/airy.hpp"
#include "qbounce/quadrature.hpp"

namespace qbounce {

struct PhysicalConstants {
  double m_N = 1.67492749804e-27;  // kg
  double g = 9.80665;              // m/s^2
  double hbar = 1.054571817e-34;   // J s
};

inline constexpr double kJoulePerPeV = 1.602176634e-31;

struct ScaleSystem {
  double m_N = 0.0;         // kg
  double g = 0.0;           // m/s^2
  double hbar = 0.0;        // J s
  double z0 = 0.0;          // um
  double E0 = 0.0;          // peV
  double hbar_peV_s = 0.0;  // hbar in peV s

  /// m_N g in peV per micrometre.
  double weight() const { return E0 / z0; }
};

ScaleSystem make_scales(const PhysicalConstants& c = {});

struct EnergyLevel {
  int n = 0;
  double a_n = 0.0;  // Airy zero
  double E_n = 0.0;  // peV
  double z_n = 0.0;  // um
};

EnergyLevel level(const ScaleSystem& s, int n);
std::vector<EnergyLevel> levels(const ScaleSystem& s, int n_max);

/// Ai'(a_n), the slope that fixes the normalisation of level n.
double level_slope(const EnergyLevel& lv);

/// psi_n at scaled height zeta.  Unnormalised: Ai(zeta + a_n) Theta(zeta).
/// Normalised: divided by sqrt(z0) Ai'(a_n), so the value is per sqrt(um).
double eigenfunction(const EnergyLevel& lv, const ScaleSystem& s, double zeta, bool normalized);

/// Ai(zeta + a_n) / Ai'(a_n) Theta(zeta): unit norm with respect to d zeta.
double eigenfunction_scaled(const EnergyLevel& lv, double zeta);

struct MomentumComponents {
  double c = 0.0;  // cosine transform
  double s = 0.0;  // sine transform
};

/// f_c(k, a_n), f_s(k, a_n) with the 1/sqrt(2 pi) prefactor.  With `normalized`
/// the state is the d zeta-normalised one, so that int |F|^2 dk = 1.
MomentumComponents momentum_components(const EnergyLevel& lv, double k, bool normalized = false,
                                       const QuadratureSpec& spec = {});

/// F(k, a_n) = f_c - i f_s.
std::complex<double> momentum_amplitude(const EnergyLevel& lv, double k, bool normalized = false,
                                        const QuadratureSpec& spec = {});

/// |F(k, a_n)|^2.
double momentum_spectrum(const EnergyLevel& lv, double k, bool normalized = false,
                         const QuadratureSpec& spec = {});

/// Physical momentum (kg m/s) of a scaled wavenumber, and the inverse.
double physical_momentum(const ScaleSystem& s, double k);
double scaled_wavenumber(const ScaleSystem& s, double k_p);

struct SuperpositionSpec {
  double p1 = 1.0;
  double p2 = 0.0;
  EnergyLevel l1;
  EnergyLevel l2;
  bool normalized = false;  // use d zeta-normalised states

  void validate() const;
};

/// (E2 - E1) / hbar in rad/s.
double beat_frequency(const ScaleSystem& s, const EnergyLevel& l1, const EnergyLevel& l2);

double superposition_density(const SuperpositionSpec& sp, const ScaleSystem& s, double zeta, double t);
double superposition_density_averaged(const SuperpositionSpec& sp, double zeta);

double superposition_momentum_density(const SuperpositionSpec& sp, const ScaleSystem& s, double k,
                                      double t, const QuadratureSpec& spec = {});
/// Same, from the components of both levels at one k (for k x t sweeps).
double superposition_momentum_density(const SuperpositionSpec& sp, const ScaleSystem& s,
                                      const MomentumComponents& f1, const MomentumComponents& f2, double t);
double superposition_momentum_density_averaged(const SuperpositionSpec& sp, double k,
                                               const QuadratureSpec& spec = {});

}  // namespace qbounce
