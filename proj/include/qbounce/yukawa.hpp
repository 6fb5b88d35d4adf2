#pragma once
// First-order perturbation by a short-range Yukawa-type term
//   W(z) = W0 exp(-z / delta)
// added to the linear potential in region II.  The perturbed states are
// Psi_n = sum_{n'} psi_{n'} T_{n',n} with T = 1 + (first-order mixing), and the
// released mode evolves as
//   psi(z, t) = Cbar_m sum psi_{n'}(z) [T exp(-i eps t / hbar) T^-1]_{n',n''} Dbar_{n''}.
//
// Internally everything is expressed in the unnormalised Ai basis of
// free_fall.hpp: with S = diag(sqrt(z0) Ai'(a_n)) the evolution matrix becomes
// S^-1 T exp(..) T^-1 S acting on D, and W0 = 0 runs through exactly the same
// arithmetic as the unperturbed evolution.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qbounce/free_fall.hpp"

namespace qbounce {

struct YukawaModel {
  double W0 = 0.0;     // peV, signed
  double delta = 0.0;  // um
  int N = 0;
  ScaleSystem scales;
  std::vector<EnergyLevel> levels;
  Eigen::MatrixXd J;            // <psi_n'|W|psi_n>, peV
  Eigen::MatrixXd T;            // T_{n',n}
  Eigen::MatrixXd T_inv;
  Eigen::MatrixXd T_tilde;      // S^-1 T S
  Eigen::MatrixXd T_tilde_inv;  // S^-1 T^-1 S
  std::vector<double> eps;      // first-order energies, peV
};

/// W(z) in peV, z in um.
double yukawa_potential(double W0, double delta, double z);
double yukawa_potential(const YukawaModel& model, double z);

/// <psi_i|W|psi_j> for normalised single-mirror states.
double matrix_element(const ScaleSystem& s, const EnergyLevel& li, const EnergyLevel& lj, double W0,
                      double delta, const QuadratureSpec& spec = {});

/// Full N x N matrix, every entry integrated on its own (no symmetrisation).
Eigen::MatrixXd matrix_elements(const ScaleSystem& s, const std::vector<EnergyLevel>& levels, double W0,
                                double delta, const QuadratureSpec& spec = {});

/// Builds J, T, T^-1 and eps for the first N levels (N <= 30).
YukawaModel make_yukawa_model(const ScaleSystem& s, double W0, double delta, int N = 15,
                              const QuadratureSpec& spec = {});

/// eps_n = E_n + J_{n,n}.
const std::vector<double>& perturbed_levels(const YukawaModel& model);

/// Psi_n^Yu(z) = sum_{n'} psi_{n'}(z) T_{n',n}, per sqrt(um); n is 1-based.
double perturbed_wavefunction(const YukawaModel& model, int n, double z);

struct PerturbedExpansion {
  Region2Expansion base;
  YukawaModel model;
  std::vector<double> D_bar;  // D_{n,m} sqrt(z0) Ai'(a_n)
};

/// Requires the model and the expansion to share basis size and scales.
PerturbedExpansion make_perturbed_expansion(const Region2Expansion& base, const YukawaModel& model);

/// Coefficients of Ai((z - z_n)/z0) at time t.
Coefficients perturbed_coefficients(const PerturbedExpansion& p, double t);

std::complex<double> evolve_perturbed(const PerturbedExpansion& p, double z, double t);
/// Re_psi and Im_psi with psi = c - i s (see TrigParts).
TrigParts perturbed_components(const PerturbedExpansion& p, double z, double t);
double perturbed_density(const PerturbedExpansion& p, double z, double t);

/// int |psi^Yu(z, t)|^2 dz.
double perturbed_norm(const PerturbedExpansion& p, double t, const QuadratureSpec& spec = {});

std::complex<double> perturbed_momentum_amplitude(const PerturbedExpansion& p, double k, double t,
                                                  const QuadratureSpec& spec = {});
double perturbed_momentum_density(const PerturbedExpansion& p, double k, double t,
                                  const QuadratureSpec& spec = {});
double perturbed_momentum_density(const PerturbedExpansion& p, const TransformTable& table, std::size_t ik,
                                  double t);

/// Perturbed minus unperturbed density, in position and in momentum.
double delta_space(const PerturbedExpansion& p, double z, double t);
double delta_momentum(const PerturbedExpansion& p, double k, double t, const QuadratureSpec& spec = {});
double delta_momentum(const PerturbedExpansion& p, const TransformTable& table, std::size_t ik, double t);

}  // namespace qbounce
