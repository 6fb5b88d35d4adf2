#pragma once
// Wigner quasi-distributions
//   W(z, k) = (1/2 pi) int exp(i k z') psi*(z + z'/2) psi(z - z'/2) dz'
// for every state family of the library.  Writing psi*(z+)psi(z-) = R + i I
// (R even, I odd in z') the integral folds onto z' >= 0:
//   W = (1/pi) int_0^B [cos(k z') R(z') - sin(k z') I(z')] dz'
// where B(z) is the largest separation still inside the support of psi.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qbounce/double_mirror.hpp"
#include "qbounce/free_fall.hpp"
#include "qbounce/gravity_states.hpp"

namespace qbounce {

enum class AxisUnit { scaled, micrometre };

struct PhaseSpaceGrid {
  std::vector<double> z_axis;
  std::vector<double> k_axis;
  std::vector<double> W;  // row-major, z outer
  AxisUnit unit = AxisUnit::scaled;

  double at(std::size_t iz, std::size_t ik) const { return W[iz * k_axis.size() + ik]; }
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

using ComplexProfile = std::function<std::complex<double>(double)>;
using RealProfile = std::function<double(double)>;

/// Folded Wigner integral of a complex profile with separation limit B.
double wigner_generic(const ComplexProfile& psi, double z, double k, double B,
                      const QuadratureSpec& spec = {});
/// Same for a real profile (sine part vanishes).
double wigner_real(const RealProfile& psi, double z, double k, double B, const QuadratureSpec& spec = {});

/// int_{-K}^{K} W(z, k) dk, with the k integral done analytically first:
/// (2/pi) int_0^B R(z') sin(K z')/z' dz'.
double wigner_position_marginal(const ComplexProfile& psi, double z, double B, double K,
                                const QuadratureSpec& spec = {});

/// int W(z, k) dz over [z_lo, z_hi] for a Wigner function given pointwise.
double wigner_momentum_marginal(const std::function<double(double, double)>& W, double k, double z_lo,
                                double z_hi, const QuadratureSpec& spec = {},
                                std::span<const double> breakpoints = {});

/// Separation limits.
double single_limit(const EnergyLevel& lv, double zeta, const QuadratureSpec& spec = {});
double double_mirror_limit(const DoubleMirrorMode& mode, double z);
double region2_limit(const Region2Expansion& e, double z, const QuadratureSpec& spec = {});

/// Single-mirror level in scaled (zeta, k).  Unnormalised Ai states unless
/// `normalized` (d zeta-normalised).
double wigner_single(const EnergyLevel& lv, double zeta, double k, bool normalized = false,
                     const QuadratureSpec& spec = {});

/// Two-level superposition at time t, and its average over one beat period.
double wigner_superposition(const SuperpositionSpec& sp, const ScaleSystem& s, double zeta, double k,
                            double t, const QuadratureSpec& spec = {});
double wigner_superposition_averaged(const SuperpositionSpec& sp, double zeta, double k,
                                     const QuadratureSpec& spec = {});

/// Double-mirror mode, z in um, k in 1/um.
double wigner_double_mirror(const DoubleMirrorMode& mode, double z, double k, const QuadratureSpec& spec = {});

/// Region-II state at time t, z in um, k in 1/um.
double wigner_region2(const Region2Expansion& e, double z, double k, double t, const QuadratureSpec& spec = {});

/// One grid row: the folded integral for every k at a fixed z.  The product
/// psi*(z+)psi(z-) is sampled once on a composite Gauss rule whose panels hold
/// at most half a period of the fastest oscillation, omega being a bound on the
/// product's own wavenumber in z'.
std::vector<double> wigner_row(const ComplexProfile& psi, double z, std::span<const double> k_axis, double B,
                               double omega);

/// Grids for each state family, filled row by row (parallel over z).  Both axes
/// must be non-empty and strictly increasing (DomainError otherwise).
PhaseSpaceGrid wigner_grid_single(const EnergyLevel& lv, std::vector<double> zeta_axis,
                                  std::vector<double> k_axis, bool normalized = false,
                                  const QuadratureSpec& spec = {});
PhaseSpaceGrid wigner_grid_superposition(const SuperpositionSpec& sp, const ScaleSystem& s, double t,
                                         std::vector<double> zeta_axis, std::vector<double> k_axis,
                                         const QuadratureSpec& spec = {});
PhaseSpaceGrid wigner_grid_double_mirror(const DoubleMirrorMode& mode, std::vector<double> z_axis,
                                         std::vector<double> k_axis);
PhaseSpaceGrid wigner_grid_region2(const Region2Expansion& e, double t, std::vector<double> z_axis,
                                   std::vector<double> k_axis, const QuadratureSpec& spec = {});

/// Trapezoid integrals over the whole grid of W and of W^2.
double grid_integral(const PhaseSpaceGrid& g);
double grid_square_integral(const PhaseSpaceGrid& g);

/// Fill a grid in parallel; W(z, k) must be thread-safe.
PhaseSpaceGrid wigner_grid(const std::function<double(double, double)>& W, std::vector<double> z_axis,
                           std::vector<double> k_axis, AxisUnit unit);

}  // namespace qbounce
