#pragma once
// Region II: a double-mirror mode released at t = 0 over a step of height h
// onto a single lower mirror, expanded over the single-mirror states
//   psi_II(z, t) = Cbar_m sum_n D_{n,m} Ai((z - z_n)/z0) exp(-i E_n t / hbar).
//
// Every region-II quantity (including the perturbed evolution in yukawa.hpp) is
// expressed through a complex coefficient vector c_n multiplying
// Ai((z - z_n)/z0), so positions and momenta share one evaluation path.

#include <complex>
#include <vector>

#include "qbounce/double_mirror.hpp"

namespace qbounce {

using Coefficients = std::vector<std::complex<double>>;

struct Region2Expansion {
  DoubleMirrorMode mode;
  double h = 0.0;  // um
  int N = 0;
  std::vector<EnergyLevel> levels;  // n = 1..N
  std::vector<double> D;            // D_{n,m}
  std::vector<double> slopes;       // Ai'(a_n)
  std::vector<int> fallback;        // indices n evaluated by the overlap integral

  const ScaleSystem& scales() const { return mode.scales; }
  double c_bar() const { return mode.c_bar(); }
};

/// D_{n,m} for n = 1..N.  Near-degenerate denominators |z_n - zbar - h| <
/// 1e-6 z0 switch to the overlap integral; those n are listed in `fallback`.
Region2Expansion expansion_coefficients(const DoubleMirrorMode& mode, double h, int N = 15,
                                        const QuadratureSpec& spec = {});

/// Closed-form coefficient for one level.
double closed_form_coefficient(const DoubleMirrorMode& mode, double h, const EnergyLevel& lv);

/// Coefficient from the overlap of Ai((z - z_n)/z0) with the shifted mode.
double overlap_coefficient(const DoubleMirrorMode& mode, double h, const EnergyLevel& lv,
                           const QuadratureSpec& spec = {});

/// Shifted region-I mode, support [h, L + h].
double region1_value(const DoubleMirrorMode& mode, double h, double z);
std::complex<double> region1_wavefunction(const DoubleMirrorMode& mode, double h, double z, double t);

/// exp(-i E t / hbar), E in peV, t in s.
std::complex<double> evolution_factor(double E, double t, const ScaleSystem& s);

/// c_n = Cbar_m D_{n,m} exp(-i E_n t / hbar).
Coefficients propagated_coefficients(const Region2Expansion& e, double t);

/// sum_n c_n Ai((z - z_n)/z0) over the first c.size() levels.
std::complex<double> evaluate_coefficients(const std::vector<EnergyLevel>& levels, double z0,
                                           const Coefficients& c, double z);

/// psi = c - i s: the cosine and sine parts G^c, G^s (or H^c, H^s for mixtures).
struct TrigParts {
  double c = 0.0;
  double s = 0.0;
};

TrigParts region2_components(const Region2Expansion& e, double z, double t);
std::complex<double> region2_wavefunction(const Region2Expansion& e, double z, double t);
double spatial_density(const Region2Expansion& e, double z, double t);

/// Height beyond which every basis state in the expansion is negligible.
double region2_extent(const Region2Expansion& e, const QuadratureSpec& spec = {});

/// L2 norm of psi_I(., 0) - psi_II(., 0) over [0, L + h + 3 z0].
double continuity_residual(const Region2Expansion& e, const QuadratureSpec& spec = {});

/// int |psi_II(z, t)|^2 dz.
double region2_norm(const Region2Expansion& e, double t, const QuadratureSpec& spec = {});

/// Coherent mixture sqrt(p1) psi_1 + sqrt(p2) psi_2; both expansions must share
/// their basis.
Coefficients coherent_coefficients(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                                   double p2, double t);
TrigParts coherent_components(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                              double p2, double z, double t);
double coherent_mixture_density(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                                double p2, double z, double t);
double incoherent_mixture_density(const Region2Expansion& e1, const Region2Expansion& e2, double p1,
                                  double p2, double z, double t);

/// f^Ai_{c,II}(k, n), f^Ai_{s,II}(k, n): half-line trig transforms of
/// Ai((z - z_n)/z0), k in 1/um.
MomentumComponents airy_transform(const EnergyLevel& lv, double z0, double k,
                                  const QuadratureSpec& spec = {});

/// Transforms of every basis state on a fixed k grid, computed once.
class TransformTable {
 public:
  TransformTable(const std::vector<EnergyLevel>& levels, double z0, std::vector<double> k_axis,
                 const QuadratureSpec& spec = {});

  const std::vector<double>& k_axis() const { return k_axis_; }
  int basis_size() const { return basis_; }
  /// Transforms of all basis states at grid index ik.
  const std::vector<MomentumComponents>& at(std::size_t ik) const { return table_[ik]; }

 private:
  std::vector<double> k_axis_;
  int basis_ = 0;
  std::vector<std::vector<MomentumComponents>> table_;
};

/// Transforms of all basis states at one k.
std::vector<MomentumComponents> basis_transforms(const std::vector<EnergyLevel>& levels, double z0,
                                                 double k, const QuadratureSpec& spec = {});

/// (1/sqrt(2 pi)) sum_n c_n (f_c - i f_s): Re and Im are F^Re, F^Im.
std::complex<double> momentum_from_coefficients(const Coefficients& c,
                                                const std::vector<MomentumComponents>& f);

std::complex<double> region2_momentum_amplitude(const Region2Expansion& e, double k, double t,
                                                const QuadratureSpec& spec = {});
double momentum_density(const Region2Expansion& e, double k, double t, const QuadratureSpec& spec = {});
double momentum_density(const Region2Expansion& e, const TransformTable& table, std::size_t ik, double t);

}  // namespace qbounce
