#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyclespec {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline constexpr std::size_t kDefaultDenseLimit = 4096;

// N x N real matrix, row-major. Entry (n, m) is the weight of edge n -> m.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const double> entries() const noexcept { return entries_; }
  std::span<double> entries() noexcept { return entries_; }

  double trace() const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

// Immutable sparse directed graph with real edge weights.
//
// Invariants (enforced by from_edges): node indices in [0, N), no duplicate
// (src, dst) pair, weights finite and nonzero. Edges are stored in
// lexicographic (src, dst) order, so two graphs with the same edge set
// compare equal regardless of construction order. Self-loops are allowed.
class DirectedWeightedGraph {
 public:
  DirectedWeightedGraph() = default;

  // Throws ContractError on duplicate/zero/non-finite edges, RangeError on
  // out-of-range indices.
  static DirectedWeightedGraph from_edges(std::size_t n_nodes, std::vector<Edge> edges);

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  double mean_out_degree() const noexcept {
    return n_nodes_ ? static_cast<double>(edges_.size()) / static_cast<double>(n_nodes_) : 0.0;
  }
  std::span<const Edge> edges() const noexcept { return edges_; }
  // Outgoing edges of `node`, ordered by destination.
  std::span<const Edge> out_edges(NodeId node) const;
  double self_loop_weight_sum() const;

  friend bool operator==(const DirectedWeightedGraph&, const DirectedWeightedGraph&) = default;

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> row_offsets_;  // CSR offsets into edges_, size N + 1
};

// Left multiplication v^T M: result[m] = sum over edges (n, m) of w(n, m) v[n].
// Walks therefore follow edge direction. Throws ContractError if |v| != N.
std::vector<double> matvec(const DirectedWeightedGraph& g, std::span<const double> v);

// Throws CapacityError if N exceeds `dense_limit`.
DenseMatrix to_dense(const DirectedWeightedGraph& g, std::size_t dense_limit = kDefaultDenseLimit);

// Inverse of to_dense: every nonzero entry becomes an edge.
DirectedWeightedGraph from_dense(const DenseMatrix& m);

// Edge-list TSV: first line "# nodes=N", then "src<TAB>dst<TAB>weight" per
// edge. Further lines starting with '#' and blank lines are ignored.
DirectedWeightedGraph read_edge_list(const std::filesystem::path& path);
DirectedWeightedGraph parse_edge_list(std::string_view text);
void write_edge_list(const DirectedWeightedGraph& g, const std::filesystem::path& path);
std::string format_edge_list(const DirectedWeightedGraph& g);

}  // namespace cyclespec
