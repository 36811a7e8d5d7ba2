#include "cyclespec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>

#include <lapacke.h>

#include "cyclespec/errors.hpp"
#include "cyclespec/rng.hpp"

#ifdef CYCLESPEC_HAVE_OPENBLAS_THREADS
extern "C" void openblas_set_num_threads(int);
#endif

namespace cyclespec {

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (const auto& z : eigenvalues) r = std::max(r, std::abs(z));
  return r;
}

namespace {

void pin_blas_to_one_thread() {
#ifdef CYCLESPEC_HAVE_OPENBLAS_THREADS
  static std::once_flag once;
  std::call_once(once, [] { openblas_set_num_threads(1); });
#endif
}

Complex power_sum(std::span<const Complex> values, std::size_t length) {
  Complex sum = 0.0;
  for (const auto& z : values) {
    Complex p = 1.0;
    for (std::size_t i = 0; i < length; ++i) p *= z;
    sum += p;
  }
  return sum;
}

}  // namespace

Spectrum compute_spectrum(const DirectedWeightedGraph& g, std::size_t dense_limit) {
  const std::size_t n = g.n_nodes();
  if (n > dense_limit) {
    throw CapacityError("graph has " + std::to_string(n) + " nodes, above the dense limit of " +
                        std::to_string(dense_limit));
  }
  Spectrum s;
  if (n == 0) return s;
  pin_blas_to_one_thread();

  // Row-major M read as column-major is M^T, which has the same spectrum.
  std::vector<double> a(n * n, 0.0);
  for (const auto& e : g.edges()) a[static_cast<std::size_t>(e.src) * n + e.dst] = e.weight;
  std::vector<double> wr(n), wi(n);
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', ln, a.data(), ln, wr.data(),
                                        wi.data(), nullptr, 1, nullptr, 1);
  if (info < 0) throw NumericalError("dgeev rejected argument " + std::to_string(-info));
  if (info > 0) {
    throw NumericalError("QR iteration did not converge; " + std::to_string(info) +
                             " eigenvalues unresolved",
                         static_cast<std::size_t>(info));
  }
  s.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.eigenvalues[i] = {wr[i], wi[i]};

  const auto traces = trace_of_powers(g, kTraceResidualOrders);
  s.trace_residuals.resize(kTraceResidualOrders);
  for (std::size_t l = 1; l <= kTraceResidualOrders; ++l) {
    const double residual = std::abs(power_sum(s.eigenvalues, l) - traces[l - 1]);
    s.trace_residuals[l - 1] = residual;
    if (residual > kTraceResidualTolerance * std::max(1.0, std::abs(traces[l - 1]))) {
      throw NumericalError("trace residual at L=" + std::to_string(l) + " is " +
                           std::to_string(residual));
    }
  }
  return s;
}

Complex empirical_moment(const Spectrum& s, std::size_t length) {
  if (length < 1) throw ContractError("moment order must be >= 1");
  if (s.eigenvalues.empty()) return 0.0;
  return power_sum(s.eigenvalues, length) / static_cast<double>(s.size());
}

double absolute_moment(const Spectrum& s, std::size_t length) {
  if (s.eigenvalues.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& z : s.eigenvalues) sum += std::pow(std::abs(z), static_cast<double>(length));
  return sum / static_cast<double>(s.size());
}

CycleWeightSeries rho_eigen_moments(const Spectrum& s, std::size_t l_max) {
  CycleWeightSeries out;
  out.n_nodes = s.size();
  out.method = RhoMethod::eigen_moments;
  for (std::size_t l = 1; l <= l_max; ++l) out.rho.push_back(empirical_moment(s, l).real());
  return out;
}

std::vector<double> eigenvalue_histogram(std::span<const Complex> points, double half_width) {
  constexpr auto bins = static_cast<long>(kSymmetryGridBins);
  std::vector<double> h(kSymmetryGridBins * kSymmetryGridBins, 0.0);
  if (points.empty()) return h;
  const double scale = static_cast<double>(bins) / (2.0 * half_width);
  const auto cell = [&](double x) {
    const auto i = static_cast<long>(std::floor((x + half_width) * scale));
    return static_cast<std::size_t>(std::clamp(i, 0L, bins - 1));
  };
  const double unit = 1.0 / static_cast<double>(points.size());
  for (const auto& z : points) h[cell(z.real()) * kSymmetryGridBins + cell(z.imag())] += unit;
  return h;
}

namespace {

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

double grid_half_width(const Spectrum& s) {
  const double r = s.spectral_radius();
  return kSymmetryGridMargin * (r > 0.0 ? r : 1.0);
}

void require_symmetry_size(const Spectrum& s) {
  if (s.size() < 100)
    throw ContractError("symmetry statistics need at least 100 eigenvalues (got " +
                        std::to_string(s.size()) + ")");
}

}  // namespace

double rotation_symmetry_distance(const Spectrum& s, double theta) {
  require_symmetry_size(s);
  const double half_width = grid_half_width(s);
  const Complex phase = std::polar(1.0, theta);
  std::vector<Complex> rotated(s.eigenvalues);
  for (auto& z : rotated) z *= phase;
  return l1_distance(eigenvalue_histogram(s.eigenvalues, half_width),
                     eigenvalue_histogram(rotated, half_width));
}

double bootstrap_noise_threshold(const Spectrum& s, const BootstrapOptions& opts) {
  require_symmetry_size(s);
  if (opts.resamples < 2) throw ContractError("bootstrap needs at least 2 resamples");
  if (!(opts.quantile > 0.0 && opts.quantile < 1.0))
    throw ContractError("bootstrap quantile must lie in (0, 1)");
  const double half_width = grid_half_width(s);
  const auto original = eigenvalue_histogram(s.eigenvalues, half_width);
  const std::size_t n = s.size();

  Rng rng(opts.seed);
  std::vector<double> distances(opts.resamples);
  std::vector<Complex> resample(n);
  for (auto& d : distances) {
    for (auto& z : resample) z = s.eigenvalues[rng.below(n)];
    d = l1_distance(eigenvalue_histogram(resample, half_width), original);
  }
  std::sort(distances.begin(), distances.end());
  // Linear interpolation between order statistics.
  const double pos = opts.quantile * static_cast<double>(distances.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, distances.size() - 1);
  return distances[lo] + (pos - static_cast<double>(lo)) * (distances[hi] - distances[lo]);
}

bool conjugation_symmetry_check(const Spectrum& s, double tol) {
  const auto near = [tol](const Complex& a, const Complex& b) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
  };
  std::vector<Complex> upper, lower;
  for (const auto& z : s.eigenvalues) {
    if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z))) continue;
    (z.imag() > 0 ? upper : lower).push_back(z);
  }
  if (upper.size() != lower.size()) return false;
  // Greedy matching in real-part order; candidates within tolerance are
  // contiguous after sorting.
  const auto by_real = [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : std::abs(a.imag()) < std::abs(b.imag());
  };
  std::sort(upper.begin(), upper.end(), by_real);
  std::sort(lower.begin(), lower.end(), by_real);
  std::vector<bool> used(lower.size(), false);
  std::size_t first_open = 0;
  for (const auto& z : upper) {
    const Complex target = std::conj(z);
    const double reach = tol * std::max(1.0, std::abs(z));
    while (first_open < lower.size() && (used[first_open] || lower[first_open].real() < target.real() - reach))
      ++first_open;
    bool matched = false;
    for (std::size_t j = first_open; j < lower.size() && lower[j].real() <= target.real() + reach; ++j) {
      if (!used[j] && near(target, lower[j])) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::string format_spectrum_csv(const Spectrum& s) {
  std::string out = "re,im\n";
  char line[96];
  for (const auto& z : s.eigenvalues) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", z.real(), z.imag());
    out += line;
  }
  return out;
}

void write_spectrum_csv(const Spectrum& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << format_spectrum_csv(s);
}

}  // namespace cyclespec
