#include "cyclespec/circulant_rings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cyclespec/errors.hpp"

namespace cyclespec {

using std::numbers::pi;

Spectrum analytic_single_cycle_spectrum(std::size_t n_nodes, int cycle_sign) {
  if (n_nodes < 1) throw ContractError("single-cycle spectrum needs N >= 1");
  if (cycle_sign != 1 && cycle_sign != -1) throw ContractError("cycle_sign must be +1 or -1");
  Spectrum s;
  s.source.label = "analytic single cycle N=" + std::to_string(n_nodes) +
                   (cycle_sign > 0 ? " sign=+1" : " sign=-1");
  const double shift = cycle_sign > 0 ? 0.0 : pi;
  s.eigenvalues.reserve(n_nodes);
  for (std::size_t n = 0; n < n_nodes; ++n) {
    const double phase = (2.0 * pi * static_cast<double>(n) + shift) / static_cast<double>(n_nodes);
    s.eigenvalues.push_back(std::polar(1.0, phase));
  }
  return s;
}

std::vector<double> predicted_radii(std::size_t degree) {
  if (degree < 1) throw ContractError("degree must be >= 1");
  std::vector<double> radii;
  const std::size_t first = degree % 2 == 1 ? 1 : 2;
  for (std::size_t v = first; v <= degree; v += 2) radii.push_back(std::sqrt(static_cast<double>(v)));
  return radii;
}

double max_modulus_prediction(std::size_t degree) {
  if (degree < 1) throw ContractError("degree must be >= 1");
  return std::sqrt(static_cast<double>(degree));
}

double RingDetectionOptions::effective_eps_real() const {
  return eps_real > 0.0 ? eps_real : 1e-3 * std::sqrt(static_cast<double>(degree));
}

std::size_t RingProfile::total() const {
  return std::accumulate(ring_counts.begin(), ring_counts.end(), std::size_t{0}) +
         real_line_count + non_ring_count;
}

namespace {

double median_of_sorted(std::span<const double> xs) {
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

struct Run {
  std::size_t begin;  // index into sorted moduli
  std::size_t end;    // one past the last member
};

}  // namespace

RingProfile detect_rings(const Spectrum& s, const RingDetectionOptions& opts) {
  if (s.size() < 200)
    throw ContractError("ring detection needs at least 200 eigenvalues (got " +
                        std::to_string(s.size()) + ")");
  if (opts.degree < 1) throw ContractError("ring detection needs degree >= 1");

  const double root_d = std::sqrt(static_cast<double>(opts.degree));
  const double eps_real = opts.effective_eps_real();
  const double n = static_cast<double>(s.size());

  RingProfile profile;
  std::vector<double> moduli;
  moduli.reserve(s.size());
  for (const auto& z : s.eigenvalues) {
    if (std::abs(z.imag()) < eps_real)
      ++profile.real_line_count;
    else
      moduli.push_back(std::abs(z));
  }
  if (moduli.empty()) {
    profile.empty = true;
    profile.note = "no eigenvalues off the real line";
    return profile;
  }
  std::sort(moduli.begin(), moduli.end());

  const double link = opts.link_factor * root_d / n;
  const auto min_members = static_cast<std::size_t>(std::ceil(opts.min_ring_fraction * n));
  std::vector<Run> cores;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= moduli.size(); ++i) {
    if (i == moduli.size() || moduli[i] - moduli[i - 1] > link) {
      if (i - start >= std::max<std::size_t>(1, min_members)) cores.push_back({start, i});
      start = i;
    }
  }

  std::vector<Run> rings;
  std::vector<double> gaps;
  const double merge_gap = opts.min_gap * root_d;
  for (const auto& core : cores) {
    if (!rings.empty()) {
      const double gap = moduli[core.begin] - moduli[rings.back().end - 1];
      if (gap < merge_gap) {
        rings.back().end = core.end;
        continue;
      }
      gaps.push_back(gap);
    }
    rings.push_back(core);
  }

  if (opts.degree == 2 && rings.size() > 1) {
    rings.erase(rings.begin(), rings.end() - 1);
    gaps.clear();
  }
  profile.interior_is_non_ring = opts.degree == 2;

  std::size_t in_rings = 0;
  for (const auto& r : rings) {
    const auto members = std::span<const double>(moduli).subspan(r.begin, r.end - r.begin);
    profile.radii.push_back(median_of_sorted(members));
    profile.ring_counts.push_back(members.size());
    in_rings += members.size();
  }
  profile.gaps = std::move(gaps);
  profile.non_ring_count = moduli.size() - in_rings;
  if (rings.empty()) profile.note = "no dense ring found";
  else if (opts.degree == 2) profile.note = "outer ring only; interior lemniscate is non-ring mass";
  return profile;
}

}  // namespace cyclespec
