#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cyclespec/cycle_stats.hpp"
#include "cyclespec/graph.hpp"

namespace cyclespec {

using Complex = std::complex<double>;

struct SpectrumSource {
  std::string label;
  std::uint64_t seed = 0;
};

// All N eigenvalues of a real adjacency matrix.
//
// trace_residuals[L-1] = |sum lambda^L - tr(M^L)| for L = 1, 2, 3; empty for
// spectra that were not computed from a matrix (analytic spectra).
struct Spectrum {
  std::vector<Complex> eigenvalues;
  std::vector<double> trace_residuals;
  SpectrumSource source;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double spectral_radius() const;
};

inline constexpr std::size_t kTraceResidualOrders = 3;
inline constexpr double kTraceResidualTolerance = 1e-6;

// Dense nonsymmetric eigenvalues through LAPACK dgeev (balancing, Hessenberg
// reduction, shifted QR). Throws CapacityError above `dense_limit`,
// NumericalError when the QR iteration fails or a trace residual exceeds
// 1e-6 * max(1, |tr(M^L)|).
Spectrum compute_spectrum(const DirectedWeightedGraph& g,
                          std::size_t dense_limit = kDefaultDenseLimit);

// (1/N) sum lambda_n^L.
Complex empirical_moment(const Spectrum& s, std::size_t length);

// Real parts of the empirical moments as a rho series (method eigen_moments).
CycleWeightSeries rho_eigen_moments(const Spectrum& s, std::size_t l_max);

// (1/N) sum |lambda_n|^L, the natural scale for moment comparisons.
double absolute_moment(const Spectrum& s, std::size_t length);

inline constexpr std::size_t kSymmetryGridBins = 40;
inline constexpr double kSymmetryGridMargin = 1.05;

// Normalized 2-D histogram on a fixed kSymmetryGridBins^2 grid over
// [-half_width, half_width]^2; points outside are clamped to edge cells.
std::vector<double> eigenvalue_histogram(std::span<const Complex> points, double half_width);

// L1 distance in [0, 2] between the histogram of the spectrum and of its
// copy rotated by theta, on the grid with half-width 1.05 * max|lambda|.
// Requires N >= 100.
double rotation_symmetry_distance(const Spectrum& s, double theta);

struct BootstrapOptions {
  std::size_t resamples = 200;
  double quantile = 0.95;
  std::uint64_t seed = 0;
};

// Resampling noise level of rotation_symmetry_distance: the `quantile` of the
// L1 distance between histograms of N-point resamples (with replacement) and
// the original spectrum, on the same grid.
double bootstrap_noise_threshold(const Spectrum& s, const BootstrapOptions& opts = {});

// True iff the eigenvalue multiset is closed under conjugation: every
// eigenvalue pairs with a distinct conjugate partner within
// tol * max(1, |lambda|), or is itself within that distance of the real axis.
bool conjugation_symmetry_check(const Spectrum& s, double tol = 1e-6);

// "re,im" header then one eigenvalue per line at 17 significant digits.
std::string format_spectrum_csv(const Spectrum& s);
void write_spectrum_csv(const Spectrum& s, const std::filesystem::path& path);

}  // namespace cyclespec
