#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cyclespec/spectra.hpp"

namespace cyclespec {

// Eigenvalues of a single directed N-cycle whose weight product has sign
// cycle_sign: the N-th roots of cycle_sign, e^{i (2 pi n + (1 - sign) pi / 2) / N}.
Spectrum analytic_single_cycle_spectrum(std::size_t n_nodes, int cycle_sign);

// Predicted ring radii for degree d: sqrt(1), sqrt(3), ..., sqrt(d) for odd
// d and sqrt(2), sqrt(4), ..., sqrt(d) for even d; ceil(d/2) values.
std::vector<double> predicted_radii(std::size_t degree);

// sqrt(d).
double max_modulus_prediction(std::size_t degree);

struct RingDetectionOptions {
  std::size_t degree = 1;
  // |Im lambda| below this is real-line mass; <= 0 selects 1e-3 * sqrt(d).
  double eps_real = 0.0;
  // Rings separated by less than min_gap * sqrt(d) are merged.
  double min_gap = 0.08;
  // Consecutive sorted moduli closer than link_factor * sqrt(d) / N belong to
  // the same dense run.
  double link_factor = 2.0;
  // Dense runs smaller than this fraction of N are not rings.
  double min_ring_fraction = 0.02;

  double effective_eps_real() const;
};

struct RingProfile {
  std::vector<double> radii;              // strictly increasing ring medians
  std::vector<std::size_t> ring_counts;
  std::size_t real_line_count = 0;
  // Off-axis eigenvalues outside every ring (scattered mass, and for d = 2
  // the interior lemniscate).
  std::size_t non_ring_count = 0;
  // Separation between consecutive rings (next ring's smallest modulus minus
  // the previous ring's largest), one per boundary.
  std::vector<double> gaps;
  bool interior_is_non_ring = false;  // set for d = 2
  bool empty = false;                 // no off-axis eigenvalues
  std::string note;

  std::size_t total() const;
};

// Splits a circulant spectrum into real-line mass, concentric rings and
// scattered non-ring mass:
//  1. |Im lambda| < eps_real goes to the real line;
//  2. remaining moduli are sorted and linked into runs wherever consecutive
//     moduli are closer than link_factor * sqrt(d) / N;
//  3. runs with at least min_ring_fraction * N members are ring cores; cores
//     closer than min_gap * sqrt(d) merge (absorbing the moduli between);
//  4. each ring's radius is the median modulus of its members.
// For d = 2 only the outermost ring is kept and the interior is flagged as
// non-ring mass. Requires N >= 200.
RingProfile detect_rings(const Spectrum& s, const RingDetectionOptions& opts);

}  // namespace cyclespec
