#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cyclespec/spectra.hpp"

namespace cyclespec {

// Regular tau-ellipse: points whose distances to the tau foci
// f_k = alpha * exp(i (2 pi k / tau + phase_offset)) sum to beta.
struct TauEllipse {
  std::size_t tau = 2;
  double alpha = 0.0;
  double beta = 2.0;
  double phase_offset = 0.0;  // 0 or pi / tau

  Complex focus(std::size_t k) const;
  // Throws ContractError unless tau >= 2, alpha >= 0 and beta >= tau * alpha.
  void validate() const;
};

double focal_distance_sum(Complex x, const TauEllipse& e);

// Anchor points 1 + rho and (1 - rho) e^{i pi / tau} on the curve.
struct TauEllipseAnchors {
  Complex on_axis;
  Complex off_axis;
};
TauEllipseAnchors anchor_points(std::size_t tau, double rho_tau);

struct TauEllipseFit {
  TauEllipse ellipse;  // built from the smallest root
  double rho_tau = 0.0;
  std::vector<double> alpha_roots;  // every bracketed root in [0, 2], ascending
};

// Recovers (alpha, beta) so that both anchor points lie on the curve. alpha
// is the smallest nonnegative root of the anchor difference function on
// [0, 2] (grid scan then bisection to 1e-12); foci are rotated by pi / tau
// when rho_tau < 0. Throws ContractError if |rho_tau| >= 1, FitError when no
// root is bracketed.
TauEllipseFit fit_from_rho(std::size_t tau, double rho_tau);

// focal_distance_sum(x) <= (1 + slack) * beta.
bool contains(Complex x, const TauEllipse& e, double slack = 0.0);

// Radius r along direction theta with focal_distance_sum(r e^{i theta}) = beta,
// by bisection on [0, beta]. Throws ContractError for degenerate curves
// (beta = tau * alpha) and NumericalError if the bracket has no sign change.
double boundary_radius(const TauEllipse& e, double theta);

// Points at theta_j = 2 pi j / n_samples, in angle order. n_samples >= 8.
std::vector<Complex> boundary_points(const TauEllipse& e, std::size_t n_samples);

// Fraction of eigenvalues inside the curve inflated by `slack`.
double containment_fraction(const Spectrum& s, const TauEllipse& e, double slack);

}  // namespace cyclespec
