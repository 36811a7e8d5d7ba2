#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "cyclespec/graph.hpp"
#include "cyclespec/rng.hpp"

namespace cyclespec::oracle {

// Random graph with `n_edges` distinct (src, dst) pairs, weights uniform in
// [-1, 1] away from zero. Self-loops only when allowed.
inline DirectedWeightedGraph random_graph(std::size_t n, std::size_t n_edges, std::uint64_t seed,
                                          bool self_loops = true) {
  Rng rng(seed);
  const std::size_t pairs = self_loops ? n * n : n * (n - 1);
  n_edges = std::min(n_edges, pairs);
  std::vector<bool> taken(n * n, false);
  std::vector<Edge> edges;
  while (edges.size() < n_edges) {
    const auto a = rng.below(n), b = rng.below(n);
    if ((!self_loops && a == b) || taken[a * n + b]) continue;
    taken[a * n + b] = true;
    double w = 0.0;
    while (std::abs(w) < 1e-3) w = 2.0 * (static_cast<double>(rng.next() >> 11) * 0x1.0p-53) - 1.0;
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
  }
  return DirectedWeightedGraph::from_edges(n, std::move(edges));
}

// Plain triple-loop matrix product on row-major vectors.
inline std::vector<double> dense_multiply(const std::vector<double>& a, const std::vector<double>& b,
                                          std::size_t n) {
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = s;
    }
  return c;
}

inline std::vector<double> adjacency(const DirectedWeightedGraph& g) {
  const std::size_t n = g.n_nodes();
  std::vector<double> m(n * n, 0.0);
  for (const auto& e : g.edges()) m[e.src * n + e.dst] = e.weight;
  return m;
}

// M^power (power >= 1), row-major.
inline std::vector<double> matrix_power(const DirectedWeightedGraph& g, std::size_t power) {
  const auto m = adjacency(g);
  auto p = m;
  for (std::size_t i = 1; i < power; ++i) p = dense_multiply(p, m, g.n_nodes());
  return p;
}

inline double trace_of_power(const DirectedWeightedGraph& g, std::size_t power) {
  const auto p = matrix_power(g, power);
  double t = 0.0;
  for (std::size_t i = 0; i < g.n_nodes(); ++i) t += p[i * g.n_nodes() + i];
  return t;
}

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Focal distance sum in 50-digit arithmetic.
inline double focal_sum_extended(std::complex<double> x, std::size_t tau, double alpha,
                                 double phase) {
  const Float50 pi50 = boost::math::constants::pi<Float50>();
  Float50 sum = 0;
  for (std::size_t k = 0; k < tau; ++k) {
    const Float50 angle = 2 * pi50 * Float50(k) / Float50(tau) + Float50(phase);
    const Float50 dx = Float50(alpha) * cos(angle) - Float50(x.real());
    const Float50 dy = Float50(alpha) * sin(angle) - Float50(x.imag());
    sum += sqrt(dx * dx + dy * dy);
  }
  return static_cast<double>(sum);
}

// Closed walks of length L on the unweighted circulant, counted as the number
// of step sequences in {1..d}^L whose sum is a multiple of N: the coefficient
// sum of x^{jN} in (x + ... + x^d)^L.
inline boost::multiprecision::cpp_int circulant_closed_walks_by_compositions(std::size_t n,
                                                                             std::size_t d,
                                                                             std::size_t length) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> poly{1};
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<cpp_int> next(poly.size() + d);
    for (std::size_t s = 0; s < poly.size(); ++s) {
      if (poly[s] == 0) continue;
      for (std::size_t k = 1; k <= d; ++k) next[s + k] += poly[s];
    }
    poly.swap(next);
  }
  cpp_int total = 0;
  for (std::size_t s = 0; s < poly.size(); s += n) total += poly[s];
  return total;
}

// Sorts by phase in [-offset, 2 pi - offset).
inline std::vector<std::complex<double>> sort_by_phase(std::vector<std::complex<double>> zs,
                                                       double offset) {
  const auto key = [offset](const std::complex<double>& z) {
    double a = std::arg(z) + offset;
    while (a < 0) a += 2.0 * std::numbers::pi;
    while (a >= 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
    return a;
  };
  std::sort(zs.begin(), zs.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return zs;
}

}  // namespace cyclespec::oracle
