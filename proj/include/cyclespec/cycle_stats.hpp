#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cyclespec/graph.hpp"

namespace cyclespec {

using BigInt = boost::multiprecision::cpp_int;

enum class RhoMethod { power_trace, eigen_moments, brute_force };
std::string_view to_string(RhoMethod m);

// Normalized closed-walk weights rho_L = tr(M^L) / N for L = 1..L_max.
struct CycleWeightSeries {
  std::vector<double> rho;  // rho[L - 1]
  std::size_t n_nodes = 0;
  RhoMethod method = RhoMethod::power_trace;

  std::size_t max_length() const noexcept { return rho.size(); }
  // 1-based accessor; throws ContractError outside [1, L_max].
  double at(std::size_t length) const;
};

enum class TraceAlgorithm {
  // L sparse left-multiplications per basis vector, O(L * E * N).
  sparse_propagation,
  // Repeated dense products; limited to N <= dense limit.
  dense_power,
};

// tr(M^L) for L = 1..l_max, index L - 1.
std::vector<double> trace_of_powers(const DirectedWeightedGraph& g, std::size_t l_max,
                                    TraceAlgorithm algorithm = TraceAlgorithm::sparse_propagation);

CycleWeightSeries rho_power_trace(const DirectedWeightedGraph& g, std::size_t l_max,
                                  TraceAlgorithm algorithm = TraceAlgorithm::sparse_propagation);

// Size limits for exhaustive walk enumeration.
struct OracleLimits {
  std::size_t max_nodes = 10;
  std::size_t max_length = 8;
};

// (1/N) * sum over all closed walks of length L of the product of their edge
// weights, by depth-first expansion from every start node. Exponential cost;
// throws CapacityError beyond `limits`.
double rho_brute_force(const DirectedWeightedGraph& g, std::size_t length,
                       OracleLimits limits = {});

// Closed-walk counts |C_L| = p_L(0, 0) of the unweighted directed circulant.
struct ClosedWalkCounts {
  std::size_t n_nodes = 0;
  std::size_t degree = 0;
  std::vector<BigInt> counts;              // counts[L - 1]
  std::vector<double> variance_estimate;   // |C_L| / N, index L - 1

  const BigInt& count(std::size_t length) const;
  // |C_L| / |C_{L-1}|; NaN when |C_{L-1}| = 0.
  double growth_ratio(std::size_t length) const;
};

// Exact dynamic program p_L(0, m) = sum_{k=1..d} p_{L-1}(0, m - k) over
// residues mod N, in arbitrary-precision integers.
ClosedWalkCounts circulant_walk_counts(std::size_t n_nodes, std::size_t degree,
                                       std::size_t l_max);

struct VarianceEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance over all trials
  double standard_error = 0.0;
  double first_half_variance = 0.0;
  double second_half_variance = 0.0;
  double first_half_standard_error = 0.0;
  double second_half_standard_error = 0.0;
  std::size_t trials = 0;
  // The two candidate normalizations of |C_L| for comparison.
  double count_over_n = 0.0;
  double count_over_n_squared = 0.0;
};

// Sample variance of rho_L over independently re-signed circulants with
// per-trial seeds derive_seed(master_seed, trial). Requires N <= 64 and
// trials >= 1000.
VarianceEstimate rho_variance_monte_carlo(std::size_t n_nodes, std::size_t degree,
                                          std::size_t length, std::size_t trials,
                                          std::uint64_t master_seed);

}  // namespace cyclespec
