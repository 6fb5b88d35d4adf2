#include "qbounce/yukawa.hpp"

#include <cmath>
#include <string>

#include "qbounce/errors.hpp"

namespace qbounce {

double yukawa_potential(double W0, double delta, double z) {
  if (!(delta > 0.0)) throw DomainError("yukawa: delta must be positive");
  return W0 * std::exp(-z / delta);
}

double yukawa_potential(const YukawaModel& model, double z) { return yukawa_potential(model.W0, model.delta, z); }

double matrix_element(const ScaleSystem& s, const EnergyLevel& li, const EnergyLevel& lj, double W0,
                      double delta, const QuadratureSpec& spec) {
  if (!(delta > 0.0)) throw DomainError("yukawa: delta must be positive");
  if (W0 == 0.0) return 0.0;
  const double rate = s.z0 / delta;
  const double ai = li.a_n, aj = lj.a_n;
  auto f = [=](double zeta) { return airy_ai(zeta + ai) * airy_ai(zeta + aj) * std::exp(-rate * zeta); };
  const EnergyLevel& outer = std::abs(ai) > std::abs(aj) ? li : lj;
  const QuadResult r = integrate_airy_tail(f, 0.0, AiryZero{outer.n, outer.a_n}, spec);
  const double unit = value_or_throw(
      r, "yukawa matrix element (" + std::to_string(li.n) + "," + std::to_string(lj.n) + ")");
  return W0 * unit / (level_slope(li) * level_slope(lj));
}

Eigen::MatrixXd matrix_elements(const ScaleSystem& s, const std::vector<EnergyLevel>& levels, double W0,
                                double delta, const QuadratureSpec& spec) {
  const auto n = static_cast<Eigen::Index>(levels.size());
  Eigen::MatrixXd J(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      J(i, j) = matrix_element(s, levels[static_cast<std::size_t>(i)], levels[static_cast<std::size_t>(j)], W0,
                               delta, spec);
    }
  }
  return J;
}

YukawaModel make_yukawa_model(const ScaleSystem& s, double W0, double delta, int N, const QuadratureSpec& spec) {
  if (N < 1 || N > 30) throw DomainError("yukawa: N must be in [1, 30]");
  if (!std::isfinite(W0)) throw DomainError("yukawa: W0 must be finite");
  if (!(delta > 0.0)) throw DomainError("yukawa: delta must be positive");
  YukawaModel m;
  m.W0 = W0;
  m.delta = delta;
  m.N = N;
  m.scales = s;
  m.levels = levels(s, N);
  m.J = matrix_elements(s, m.levels, W0, delta, spec);

  m.T = Eigen::MatrixXd::Identity(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const double gap = m.levels[static_cast<std::size_t>(j)].E_n - m.levels[static_cast<std::size_t>(i)].E_n;
      if (!(std::abs(gap) > 1e-6)) throw NumericalError("yukawa: degenerate levels in the T matrix");
      m.T(i, j) = m.J(i, j) / gap;
    }
  }
  m.T_inv = m.T.partialPivLu().inverse();

  std::vector<double> S(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) S[static_cast<std::size_t>(i)] = std::sqrt(s.z0) * level_slope(m.levels[static_cast<std::size_t>(i)]);
  m.T_tilde.resize(N, N);
  m.T_tilde_inv.resize(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const double ratio = S[static_cast<std::size_t>(j)] / S[static_cast<std::size_t>(i)];
      m.T_tilde(i, j) = m.T(i, j) * ratio;
      m.T_tilde_inv(i, j) = m.T_inv(i, j) * ratio;
    }
  }

  m.eps.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) m.eps[static_cast<std::size_t>(i)] = m.levels[static_cast<std::size_t>(i)].E_n + m.J(i, i);
  return m;
}

const std::vector<double>& perturbed_levels(const YukawaModel& model) { return model.eps; }

double perturbed_wavefunction(const YukawaModel& model, int n, double z) {
  if (n < 1 || n > model.N) throw DomainError("yukawa: level index out of range");
  const double zeta = z / model.scales.z0;
  double sum = 0.0;
  for (int i = 0; i < model.N; ++i) {
    sum += eigenfunction(model.levels[static_cast<std::size_t>(i)], model.scales, zeta, true) * model.T(i, n - 1);
  }
  return sum;
}

PerturbedExpansion make_perturbed_expansion(const Region2Expansion& base, const YukawaModel& model) {
  if (base.N != model.N || base.scales().z0 != model.scales.z0 || base.scales().E0 != model.scales.E0) {
    throw DomainError("yukawa: expansion and model must share basis size and scales");
  }
  PerturbedExpansion p{base, model, {}};
  p.D_bar.resize(base.D.size());
  for (std::size_t i = 0; i < base.D.size(); ++i) {
    p.D_bar[i] = base.D[i] * std::sqrt(base.scales().z0) * base.slopes[i];
  }
  return p;
}

Coefficients perturbed_coefficients(const PerturbedExpansion& p, double t) {
  const YukawaModel& m = p.model;
  const auto N = static_cast<std::size_t>(m.N);
  // v = T~^-1 D, w = exp(-i eps t) v, c = Cbar T~ w.
  std::vector<double> v(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      acc += m.T_tilde_inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * p.base.D[j];
    }
    v[i] = acc;
  }
  Coefficients w(N);
  for (std::size_t i = 0; i < N; ++i) w[i] = evolution_factor(m.eps[i], t, m.scales) * std::complex<double>(v[i], 0.0);
  const double cbar = p.base.c_bar();
  Coefficients c(N);
  for (std::size_t i = 0; i < N; ++i) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      acc += m.T_tilde(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * w[j];
    }
    c[i] = cbar * acc;
  }
  return c;
}

std::complex<double> evolve_perturbed(const PerturbedExpansion& p, double z, double t) {
  return evaluate_coefficients(p.base.levels, p.base.scales().z0, perturbed_coefficients(p, t), z);
}

TrigParts perturbed_components(const PerturbedExpansion& p, double z, double t) {
  const std::complex<double> psi = evolve_perturbed(p, z, t);
  return {psi.real(), -psi.imag()};
}

double perturbed_density(const PerturbedExpansion& p, double z, double t) { return std::norm(evolve_perturbed(p, z, t)); }

double perturbed_norm(const PerturbedExpansion& p, double t, const QuadratureSpec& spec) {
  const Coefficients c = perturbed_coefficients(p, t);
  const double z0 = p.base.scales().z0;
  auto f = [&](double z) { return std::norm(evaluate_coefficients(p.base.levels, z0, c, z)); };
  std::vector<double> cuts;
  for (const auto& lv : p.base.levels) cuts.push_back(lv.z_n);
  return value_or_throw(integrate(f, 0.0, region2_extent(p.base, spec), spec, cuts), "perturbed norm");
}

std::complex<double> perturbed_momentum_amplitude(const PerturbedExpansion& p, double k, double t,
                                                  const QuadratureSpec& spec) {
  return momentum_from_coefficients(perturbed_coefficients(p, t),
                                    basis_transforms(p.base.levels, p.base.scales().z0, k, spec));
}

double perturbed_momentum_density(const PerturbedExpansion& p, double k, double t, const QuadratureSpec& spec) {
  return std::norm(perturbed_momentum_amplitude(p, k, t, spec));
}

double perturbed_momentum_density(const PerturbedExpansion& p, const TransformTable& table, std::size_t ik,
                                  double t) {
  return std::norm(momentum_from_coefficients(perturbed_coefficients(p, t), table.at(ik)));
}

double delta_space(const PerturbedExpansion& p, double z, double t) {
  return perturbed_density(p, z, t) - spatial_density(p.base, z, t);
}

double delta_momentum(const PerturbedExpansion& p, double k, double t, const QuadratureSpec& spec) {
  const auto f = basis_transforms(p.base.levels, p.base.scales().z0, k, spec);
  return std::norm(momentum_from_coefficients(perturbed_coefficients(p, t), f)) -
         std::norm(momentum_from_coefficients(propagated_coefficients(p.base, t), f));
}

double delta_momentum(const PerturbedExpansion& p, const TransformTable& table, std::size_t ik, double t) {
  return perturbed_momentum_density(p, table, ik, t) - momentum_density(p.base, table, ik, t);
}

}  // namespace qbounce
