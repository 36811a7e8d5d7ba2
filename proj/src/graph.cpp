#include "cyclespec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "cyclespec/errors.hpp"

namespace cyclespec {

double DenseMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (rhs.n_ != n_) throw ContractError("dense multiply: dimension mismatch");
  DenseMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      const double* row = &rhs.entries_[k * n_];
      double* dst = &out.entries_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) dst[j] += a * row[j];
    }
  }
  return out;
}

DirectedWeightedGraph DirectedWeightedGraph::from_edges(std::size_t n_nodes,
                                                        std::vector<Edge> edges) {
  for (const auto& e : edges) {
    if (e.src >= n_nodes || e.dst >= n_nodes) {
      throw RangeError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                       ") out of range for " + std::to_string(n_nodes) + " nodes");
    }
    if (!std::isfinite(e.weight) || e.weight == 0.0) {
      throw ContractError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                          ") has zero or non-finite weight");
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  const auto dup = std::adjacent_find(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src == b.src && a.dst == b.dst;
  });
  if (dup != edges.end()) {
    throw ContractError("duplicate edge (" + std::to_string(dup->src) + ", " +
                        std::to_string(dup->dst) + ")");
  }

  DirectedWeightedGraph g;
  g.n_nodes_ = n_nodes;
  g.row_offsets_.assign(n_nodes + 1, 0);
  for (const auto& e : edges) ++g.row_offsets_[e.src + 1];
  for (std::size_t i = 0; i < n_nodes; ++i) g.row_offsets_[i + 1] += g.row_offsets_[i];
  g.edges_ = std::move(edges);
  return g;
}

std::span<const Edge> DirectedWeightedGraph::out_edges(NodeId node) const {
  if (node >= n_nodes_) throw RangeError("node " + std::to_string(node) + " out of range");
  return std::span<const Edge>(edges_).subspan(row_offsets_[node],
                                               row_offsets_[node + 1] - row_offsets_[node]);
}

double DirectedWeightedGraph::self_loop_weight_sum() const {
  double s = 0.0;
  for (const auto& e : edges_)
    if (e.src == e.dst) s += e.weight;
  return s;
}

std::vector<double> matvec(const DirectedWeightedGraph& g, std::span<const double> v) {
  if (v.size() != g.n_nodes()) {
    throw ContractError("matvec: vector length " + std::to_string(v.size()) + " != N = " +
                        std::to_string(g.n_nodes()));
  }
  std::vector<double> out(g.n_nodes(), 0.0);
  for (const auto& e : g.edges()) out[e.dst] += e.weight * v[e.src];
  return out;
}

DenseMatrix to_dense(const DirectedWeightedGraph& g, std::size_t dense_limit) {
  if (g.n_nodes() > dense_limit) {
    throw CapacityError("graph has " + std::to_string(g.n_nodes()) +
                        " nodes, above the dense limit of " + std::to_string(dense_limit));
  }
  DenseMatrix m(g.n_nodes());
  for (const auto& e : g.edges()) m(e.src, e.dst) = e.weight;
  return m;
}

DirectedWeightedGraph from_dense(const DenseMatrix& m) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) != 0.0)
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), m(i, j)});
  return DirectedWeightedGraph::from_edges(m.size(), std::move(edges));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
bool parse_number(std::string_view field, T& out) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    const auto stop = line.find_first_of(" \t", start);
    fields.push_back(line.substr(start, stop == std::string_view::npos ? line.size() - start
                                                                       : stop - start));
    pos = stop == std::string_view::npos ? line.size() : stop;
  }
  return fields;
}

}  // namespace

DirectedWeightedGraph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::optional<std::size_t> n_nodes;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);

    if (!n_nodes) {
      if (line.empty() && pos > text.size()) break;
      constexpr std::string_view prefix = "# nodes=";
      std::size_t n = 0;
      if (!line.starts_with(prefix) || !parse_number(trim(line.substr(prefix.size())), n)) {
        throw ParseError("expected header \"# nodes=N\"", line_no);
      }
      n_nodes = n;
      continue;
    }
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw ParseError("expected \"src<TAB>dst<TAB>weight\", got " + std::to_string(fields.size()) +
                           " fields",
                       line_no);
    }
    std::uint64_t src = 0, dst = 0;
    double w = 0.0;
    if (!parse_number(fields[0], src) || !parse_number(fields[1], dst)) {
      throw ParseError("node index is not a nonnegative integer", line_no);
    }
    if (!parse_number(fields[2], w)) throw ParseError("weight is not a number", line_no);
    if (src >= *n_nodes || dst >= *n_nodes) {
      throw RangeError("line " + std::to_string(line_no) + ": node index out of range for " +
                       std::to_string(*n_nodes) + " nodes");
    }
    edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst), w});
    edge_lines.push_back(line_no);
  }
  if (!n_nodes) throw ParseError("empty edge list: missing \"# nodes=N\" header", 1);

  try {
    return DirectedWeightedGraph::from_edges(*n_nodes, std::move(edges));
  } catch (const ContractError& e) {
    // Rejections from the graph invariants are reported as parse errors.
    throw ParseError(e.what(), 0);
  }
}

DirectedWeightedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

std::string format_edge_list(const DirectedWeightedGraph& g) {
  std::string out = "# nodes=" + std::to_string(g.n_nodes()) + "\n";
  char weight[40];
  for (const auto& e : g.edges()) {
    std::snprintf(weight, sizeof weight, "%.17g", e.weight);
    out += std::to_string(e.src);
    out += '\t';
    out += std::to_string(e.dst);
    out += '\t';
    out += weight;
    out += '\n';
  }
  return out;
}

void write_edge_list(const DirectedWeightedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << format_edge_list(g);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace cyclespec
