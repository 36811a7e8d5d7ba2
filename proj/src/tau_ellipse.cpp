#include "cyclespec/tau_ellipse.hpp"

#include <cmath>
#include <numbers>

#include "cyclespec/errors.hpp"

namespace cyclespec {

using std::numbers::pi;

Complex TauEllipse::focus(std::size_t k) const {
  const double angle = 2.0 * pi * static_cast<double>(k) / static_cast<double>(tau) + phase_offset;
  return std::polar(alpha, angle);
}

void TauEllipse::validate() const {
  if (tau < 2) throw ContractError("tau-ellipse needs tau >= 2");
  if (!(alpha >= 0.0)) throw ContractError("tau-ellipse focus distance must be >= 0");
  if (!(beta >= static_cast<double>(tau) * alpha * (1.0 - 1e-12)))
    throw ContractError("tau-ellipse is empty: beta < tau * alpha");
}

double focal_distance_sum(Complex x, const TauEllipse& e) {
  double sum = 0.0;
  for (std::size_t k = 0; k < e.tau; ++k) sum += std::abs(e.focus(k) - x);
  return sum;
}

TauEllipseAnchors anchor_points(std::size_t tau, double rho_tau) {
  return {Complex(1.0 + rho_tau, 0.0),
          std::polar(1.0 - rho_tau, pi / static_cast<double>(tau))};
}

namespace {

constexpr double kAlphaMax = 2.0;
constexpr std::size_t kAlphaScanCells = 4000;
constexpr double kAlphaTolerance = 1e-12;

}  // namespace

TauEllipseFit fit_from_rho(std::size_t tau, double rho_tau) {
  if (tau < 2) throw ContractError("tau must be >= 2");
  if (!(std::abs(rho_tau) < 1.0)) throw ContractError("fit_from_rho requires |rho_tau| < 1");

  const double phase = rho_tau < 0.0 ? pi / static_cast<double>(tau) : 0.0;
  const auto anchors = anchor_points(tau, rho_tau);
  const auto difference = [&](double alpha) {
    const TauEllipse probe{tau, alpha, 0.0, phase};
    return focal_distance_sum(anchors.on_axis, probe) - focal_distance_sum(anchors.off_axis, probe);
  };

  TauEllipseFit fit;
  fit.rho_tau = rho_tau;
  // Values within rounding of zero count as roots; no bracket is opened
  // from such a grid point.
  const double zero_tol = 1e-14 * static_cast<double>(tau);
  const auto is_zero = [zero_tol](double v) { return std::abs(v) <= zero_tol; };
  const double step = kAlphaMax / static_cast<double>(kAlphaScanCells);
  double lo = 0.0;
  double f_lo = difference(lo);
  for (std::size_t i = 1; i <= kAlphaScanCells; ++i) {
    const double hi = step * static_cast<double>(i);
    const double f_hi = difference(hi);
    if (is_zero(f_lo)) {
      fit.alpha_roots.push_back(lo);
    } else if (!is_zero(f_hi) && (f_lo < 0.0) != (f_hi < 0.0)) {
      double a = lo, b = hi, fa = f_lo;
      while (b - a > kAlphaTolerance) {
        const double mid = 0.5 * (a + b);
        const double fm = difference(mid);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      fit.alpha_roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (is_zero(f_lo)) fit.alpha_roots.push_back(lo);
  if (fit.alpha_roots.empty()) {
    throw FitError("no tau-ellipse through the anchors for tau=" + std::to_string(tau) +
                   ", rho_tau=" + std::to_string(rho_tau) + " (alpha in [0, 2])");
  }

  fit.ellipse = TauEllipse{tau, fit.alpha_roots.front(), 0.0, phase};
  // Both anchors give the same sum at the root; average away rounding.
  fit.ellipse.beta = 0.5 * (focal_distance_sum(anchors.on_axis, fit.ellipse) +
                            focal_distance_sum(anchors.off_axis, fit.ellipse));
  return fit;
}

bool contains(Complex x, const TauEllipse& e, double slack) {
  return focal_distance_sum(x, e) <= (1.0 + slack) * e.beta;
}

double boundary_radius(const TauEllipse& e, double theta) {
  e.validate();
  const double center = static_cast<double>(e.tau) * e.alpha;
  if (!(e.beta > center)) throw ContractError("degenerate tau-ellipse: the curve is a single point");

  const Complex dir = std::polar(1.0, theta);
  const auto excess = [&](double r) { return focal_distance_sum(r * dir, e) - e.beta; };
  // The distance sum is convex along the ray, negative at the center and
  // nonnegative at r = beta, so exactly one crossing lies in (0, beta].
  double lo = 0.0, hi = e.beta;
  if (!(excess(lo) < 0.0) || excess(hi) < 0.0)
    throw NumericalError("boundary radius not bracketed on [0, beta]");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * e.beta; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Complex> boundary_points(const TauEllipse& e, std::size_t n_samples) {
  if (n_samples < 8) throw ContractError("boundary_points needs n_samples >= 8");
  std::vector<Complex> points;
  points.reserve(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_samples);
    points.push_back(std::polar(boundary_radius(e, theta), theta));
  }
  return points;
}

double containment_fraction(const Spectrum& s, const TauEllipse& e, double slack) {
  if (s.eigenvalues.empty()) return 0.0;
  std::size_t inside = 0;
  for (const auto& z : s.eigenvalues) inside += contains(z, e, slack) ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(s.size());
}

}  // namespace cyclespec
