#pragma once
// Adaptive Gauss-Kronrod (10/21) integration with a global error budget, and
// the oscillation-aware and Airy-tail helpers built on top of it.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbounce/airy.hpp"

namespace qbounce {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  double tail_cutoff = 1e-12;  // Airy envelope below this counts as zero
  double tail_pad = 15.0;      // scaled units beyond |a_n|
  double k_max = 20.0;         // largest scaled wavenumber accepted by oscillatory_integrate

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const { return best_; }

 private:
  QuadResult best_;
};

using Integrand = std::function<double(double)>;

enum class TrigKind { cosine, sine };

/// Integral of f over [a, b].  Extra breakpoints (any order, out-of-range ones
/// ignored) seed the initial partition.  Never throws on non-convergence; check
/// `converged`.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {},
                     std::span<const double> breakpoints = {});

/// Same as integrate, but partitions [a, b] into panels no wider than pi/|k|
/// first, so each panel holds at most half a period of trig(k x).
QuadResult integrate_panelized(const Integrand& f, double a, double b, double k,
                               const QuadratureSpec& spec = {});

/// Integral of f(x) trig(k x) over [a, b].
QuadResult oscillatory_integrate(const Integrand& f, double k, TrigKind kind, double a, double b,
                                 const QuadratureSpec& spec = {});

/// Integral over [a, inf) of an integrand dominated by an Ai envelope shifted by
/// a_n.  The domain is cut at |a_n| + tail_pad and the discarded tail is bounded
/// from the Ai decay rate; the bound is added to the reported error.
QuadResult integrate_airy_tail(const Integrand& f, double a, const AiryZero& n_hint,
                               const QuadratureSpec& spec = {});

/// Composite 10-point Gauss-Legendre nodes and weights on [a, b], panels no
/// wider than max_panel.  For bulk evaluation of many integrals sharing one
/// integrand factor (e.g. a Wigner row over all k).
struct FixedRule {
  std::vector<double> x;
  std::vector<double> w;
};
FixedRule composite_gauss_legendre(double a, double b, double max_panel);

/// Value of a result, or QuadratureFailure if it did not converge.
double value_or_throw(const QuadResult& r, const std::string& context);

}  // namespace qbounce
