#include "cyclespec/cycle_stats.hpp"

#include <cmath>
#include <limits>

#include "cyclespec/ensembles.hpp"
#include "cyclespec/errors.hpp"
#include "cyclespec/parallel.hpp"
#include "cyclespec/rng.hpp"

namespace cyclespec {

std::string_view to_string(RhoMethod m) {
  switch (m) {
    case RhoMethod::power_trace: return "power_trace";
    case RhoMethod::eigen_moments: return "eigen_moments";
    case RhoMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

double CycleWeightSeries::at(std::size_t length) const {
  if (length < 1 || length > rho.size())
    throw ContractError("rho_L requested for L=" + std::to_string(length) + " outside [1, " +
                        std::to_string(rho.size()) + "]");
  return rho[length - 1];
}

namespace {

std::vector<double> traces_sparse(const DirectedWeightedGraph& g, std::size_t l_max) {
  const std::size_t n = g.n_nodes();
  std::vector<double> traces(l_max, 0.0);
  std::vector<double> cur(n), next(n);
  const auto edges = g.edges();
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[start] = 1.0;
    for (std::size_t step = 0; step < l_max; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (const auto& e : edges) next[e.dst] += e.weight * cur[e.src];
      traces[step] += next[start];
      cur.swap(next);
    }
  }
  return traces;
}

std::vector<double> traces_dense(const DirectedWeightedGraph& g, std::size_t l_max) {
  const DenseMatrix m = to_dense(g);
  std::vector<double> traces(l_max, 0.0);
  DenseMatrix power = m;
  traces[0] = power.trace();
  for (std::size_t step = 1; step < l_max; ++step) {
    power = power * m;
    traces[step] = power.trace();
  }
  return traces;
}

}  // namespace

std::vector<double> trace_of_powers(const DirectedWeightedGraph& g, std::size_t l_max,
                                    TraceAlgorithm algorithm) {
  if (l_max < 1) throw ContractError("L_max must be >= 1");
  return algorithm == TraceAlgorithm::dense_power ? traces_dense(g, l_max)
                                                  : traces_sparse(g, l_max);
}

CycleWeightSeries rho_power_trace(const DirectedWeightedGraph& g, std::size_t l_max,
                                  TraceAlgorithm algorithm) {
  CycleWeightSeries series;
  series.n_nodes = g.n_nodes();
  series.method = RhoMethod::power_trace;
  series.rho = trace_of_powers(g, l_max, algorithm);
  const double n = static_cast<double>(std::max<std::size_t>(1, g.n_nodes()));
  for (auto& r : series.rho) r /= n;
  return series;
}

namespace {

double walk_weight_sum(const DirectedWeightedGraph& g, NodeId start, NodeId at,
                       std::size_t remaining, double weight) {
  if (remaining == 0) return at == start ? weight : 0.0;
  double total = 0.0;
  for (const auto& e : g.out_edges(at))
    total += walk_weight_sum(g, start, e.dst, remaining - 1, weight * e.weight);
  return total;
}

}  // namespace

double rho_brute_force(const DirectedWeightedGraph& g, std::size_t length, OracleLimits limits) {
  if (length < 1) throw ContractError("walk length must be >= 1");
  if (g.n_nodes() > limits.max_nodes || length > limits.max_length) {
    throw CapacityError("brute-force enumeration limited to N <= " +
                        std::to_string(limits.max_nodes) + ", L <= " +
                        std::to_string(limits.max_length));
  }
  if (g.n_nodes() == 0) return 0.0;
  double total = 0.0;
  for (NodeId s = 0; s < g.n_nodes(); ++s) total += walk_weight_sum(g, s, s, length, 1.0);
  return total / static_cast<double>(g.n_nodes());
}

const BigInt& ClosedWalkCounts::count(std::size_t length) const {
  if (length < 1 || length > counts.size())
    throw ContractError("walk count requested for L outside [1, L_max]");
  return counts[length - 1];
}

double ClosedWalkCounts::growth_ratio(std::size_t length) const {
  if (length < 2 || length > counts.size())
    throw ContractError("growth ratio requires 2 <= L <= L_max");
  const BigInt& prev = counts[length - 2];
  if (prev == 0) return std::numeric_limits<double>::quiet_NaN();
  // Ratio of big integers through a scaled quotient to keep precision.
  const BigInt scaled = (counts[length - 1] << 64) / prev;
  return std::ldexp(scaled.convert_to<double>(), -64);
}

ClosedWalkCounts circulant_walk_counts(std::size_t n_nodes, std::size_t degree,
                                       std::size_t l_max) {
  if (n_nodes < 2) throw ContractError("circulant walk counts need N >= 2");
  if (degree < 1 || degree >= n_nodes) throw ContractError("circulant degree must satisfy 1 <= d < N");
  if (l_max < 1) throw ContractError("L_max must be >= 1");

  ClosedWalkCounts out;
  out.n_nodes = n_nodes;
  out.degree = degree;
  out.counts.reserve(l_max);
  out.variance_estimate.reserve(l_max);

  // paths[m] = number of walks of the current length from node 0 to node m.
  std::vector<BigInt> paths(n_nodes), next(n_nodes);
  paths[0] = 1;
  for (std::size_t length = 1; length <= l_max; ++length) {
    for (std::size_t m = 0; m < n_nodes; ++m) {
      BigInt sum = 0;
      for (std::size_t k = 1; k <= degree; ++k) sum += paths[(m + n_nodes - k) % n_nodes];
      next[m] = std::move(sum);
    }
    paths.swap(next);
    out.counts.push_back(paths[0]);
    out.variance_estimate.push_back(paths[0].convert_to<double>() / static_cast<double>(n_nodes));
  }
  return out;
}

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double standard_error = 0.0;
};

// Sample variance and the standard error of that variance estimate.
Moments variance_with_error(std::span<const double> xs) {
  Moments m;
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  for (double x : xs) m.mean += x;
  m.mean /= n;
  double s2 = 0.0;
  for (double x : xs) s2 += (x - m.mean) * (x - m.mean);
  m.variance = s2 / (n - 1.0);
  const double biased = s2 / n;
  double fourth = 0.0;
  for (double x : xs) {
    const double d2 = (x - m.mean) * (x - m.mean) - biased;
    fourth += d2 * d2;
  }
  m.standard_error = std::sqrt(fourth / (n - 1.0) / n);
  return m;
}

}  // namespace

VarianceEstimate rho_variance_monte_carlo(std::size_t n_nodes, std::size_t degree,
                                          std::size_t length, std::size_t trials,
                                          std::uint64_t master_seed) {
  if (n_nodes > 64) throw ContractError("Monte Carlo variance is limited to N <= 64");
  if (trials < 1000) throw ContractError("Monte Carlo variance needs at least 1000 trials");
  if (length < 1) throw ContractError("walk length must be >= 1");

  std::vector<double> samples(trials);
  parallel_for(trials, [&](std::size_t t) {
    const auto g = generate_circulant({n_nodes, degree, derive_seed(master_seed, t)});
    samples[t] = rho_power_trace(g, length).at(length);
  });

  VarianceEstimate est;
  est.trials = trials;
  const auto all = variance_with_error(samples);
  est.mean = all.mean;
  est.variance = all.variance;
  est.standard_error = all.standard_error;
  const std::size_t half = trials / 2;
  const auto first = variance_with_error(std::span<const double>(samples).first(half));
  const auto second = variance_with_error(std::span<const double>(samples).subspan(half));
  est.first_half_variance = first.variance;
  est.first_half_standard_error = first.standard_error;
  est.second_half_variance = second.variance;
  est.second_half_standard_error = second.standard_error;

  const auto counts = circulant_walk_counts(n_nodes, degree, length);
  const double c = counts.count(length).convert_to<double>();
  const double n = static_cast<double>(n_nodes);
  est.count_over_n = c / n;
  est.count_over_n_squared = c / (n * n);
  return est;
}

}  // namespace cyclespec
