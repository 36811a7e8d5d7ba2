#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cyclespec/graph.hpp"

namespace cyclespec {

// Sparse random graph with planted directed cycles of length tau.
//
// E = round(N * avg_degree) edges of magnitude w = sqrt(N / E), so that each
// row and column of the adjacency matrix has unit variance in total.
// floor(f * E / tau) edge-disjoint directed tau-cycles are planted, each with
// weight product of sign motif_sign; the remaining edges join uniformly
// random distinct node pairs with independent uniform signs.
struct MotifEnsembleConfig {
  std::size_t n_nodes = 0;
  double avg_degree = 0.0;
  std::size_t tau = 2;
  double motif_fraction = 0.0;
  int motif_sign = 1;
  std::uint64_t seed = 0;

  std::size_t edge_count() const;
  double weight_magnitude() const;
  std::size_t planted_cycle_count() const;
  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

// Directed circulant: node n links to n+1, ..., n+d (mod N) with i.i.d. +-1 weights.
struct CirculantConfig {
  std::size_t n_nodes = 0;
  std::size_t degree = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

DirectedWeightedGraph generate_motif_graph(const MotifEnsembleConfig& cfg);
DirectedWeightedGraph generate_circulant(const CirculantConfig& cfg);

// Field-for-field JSON (de)serialization. Unknown fields are rejected.
MotifEnsembleConfig motif_config_from_json(const std::string& text);
CirculantConfig circulant_config_from_json(const std::string& text);
std::string to_json(const MotifEnsembleConfig& cfg);
std::string to_json(const CirculantConfig& cfg);

}  // namespace cyclespec
