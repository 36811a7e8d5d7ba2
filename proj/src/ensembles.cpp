#include "cyclespec/ensembles.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "cyclespec/errors.hpp"
#include "cyclespec/rng.hpp"

namespace cyclespec {

std::size_t MotifEnsembleConfig::edge_count() const {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n_nodes) * avg_degree));
}

double MotifEnsembleConfig::weight_magnitude() const {
  return std::sqrt(static_cast<double>(n_nodes) / static_cast<double>(edge_count()));
}

std::size_t MotifEnsembleConfig::planted_cycle_count() const {
  return static_cast<std::size_t>(
      std::floor(motif_fraction * static_cast<double>(edge_count()) / static_cast<double>(tau)));
}

void MotifEnsembleConfig::validate() const {
  if (n_nodes < 2) throw ConfigError("n_nodes must be >= 2");
  if (!(avg_degree > 0.0) || !std::isfinite(avg_degree))
    throw ConfigError("avg_degree must be a positive finite number");
  if (tau < 2) throw ConfigError("tau must be >= 2 (got " + std::to_string(tau) + ")");
  if (tau > n_nodes) throw ConfigError("tau must not exceed n_nodes");
  if (!(motif_fraction >= 0.0 && motif_fraction <= 1.0))
    throw ConfigError("motif_fraction must lie in [0, 1]");
  if (motif_sign != 1 && motif_sign != -1) throw ConfigError("motif_sign must be +1 or -1");
  const auto e = edge_count();
  if (e == 0) throw ConfigError("n_nodes * avg_degree rounds to zero edges");
  if (e > n_nodes * (n_nodes - 1))
    throw ConfigError("avg_degree too large: more edges than distinct node pairs");
  if (motif_fraction > 0.0 && planted_cycle_count() == 0)
    throw ConfigError("motif_fraction * E < tau: no cycle can be planted");
}

void CirculantConfig::validate() const {
  if (n_nodes < 2) throw ConfigError("n_nodes must be >= 2");
  if (degree < 1 || degree >= n_nodes)
    throw ConfigError("degree must satisfy 1 <= d < N (got d=" + std::to_string(degree) +
                      ", N=" + std::to_string(n_nodes) + ")");
}

DirectedWeightedGraph generate_motif_graph(const MotifEnsembleConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_nodes;
  const std::size_t n_edges = cfg.edge_count();
  const std::size_t n_cycles = cfg.planted_cycle_count();
  const double w = cfg.weight_magnitude();
  const std::size_t max_retries = 100 * n_edges;

  Rng rng(cfg.seed);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(2 * n_edges);
  const auto key = [n](std::size_t a, std::size_t b) { return static_cast<std::uint64_t>(a) * n + b; };
  std::vector<Edge> edges;
  edges.reserve(n_edges);
  std::size_t retries = 0;

  // Cycle nodes are dealt from a shuffled pool, so cycles within one pass
  // over the pool are node-disjoint; later passes may reuse nodes.
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  rng.shuffle(std::span<NodeId>(pool));
  std::size_t cursor = 0;
  std::vector<int> signs(cfg.tau);

  for (std::size_t c = 0; c < n_cycles; ++c) {
    for (;;) {
      if (cursor + cfg.tau > n) {
        rng.shuffle(std::span<NodeId>(pool));
        cursor = 0;
      }
      const NodeId* nodes = &pool[cursor];
      bool clash = false;
      for (std::size_t i = 0; i < cfg.tau && !clash; ++i)
        clash = taken.contains(key(nodes[i], nodes[(i + 1) % cfg.tau]));
      if (clash) {
        if (++retries > max_retries)
          throw GenerationError("cycle planting exhausted " + std::to_string(max_retries) +
                                " retries");
        rng.shuffle(std::span<NodeId>(pool));
        cursor = 0;
        continue;
      }
      int product = 1;
      for (std::size_t i = 0; i + 1 < cfg.tau; ++i) {
        signs[i] = rng.sign();
        product *= signs[i];
      }
      signs[cfg.tau - 1] = cfg.motif_sign * product;
      for (std::size_t i = 0; i < cfg.tau; ++i) {
        const NodeId a = nodes[i];
        const NodeId b = nodes[(i + 1) % cfg.tau];
        taken.insert(key(a, b));
        edges.push_back({a, b, signs[i] * w});
      }
      cursor += cfg.tau;
      break;
    }
  }

  while (edges.size() < n_edges) {
    const auto a = static_cast<NodeId>(rng.below(n));
    auto b = static_cast<NodeId>(rng.below(n - 1));
    if (b >= a) ++b;
    if (!taken.insert(key(a, b)).second) {
      if (++retries > max_retries)
        throw GenerationError("background edge sampling exhausted " +
                              std::to_string(max_retries) + " retries");
      continue;
    }
    edges.push_back({a, b, rng.sign() * w});
  }
  return DirectedWeightedGraph::from_edges(n, std::move(edges));
}

DirectedWeightedGraph generate_circulant(const CirculantConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::vector<Edge> edges;
  edges.reserve(cfg.n_nodes * cfg.degree);
  for (std::size_t node = 0; node < cfg.n_nodes; ++node) {
    for (std::size_t k = 1; k <= cfg.degree; ++k) {
      edges.push_back({static_cast<NodeId>(node), static_cast<NodeId>((node + k) % cfg.n_nodes),
                       static_cast<double>(rng.sign())});
    }
  }
  return DirectedWeightedGraph::from_edges(cfg.n_nodes, std::move(edges));
}

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const std::set<std::string>& allowed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [name, _] : j.items())
    if (!allowed.contains(name)) throw ConfigError("unknown config field \"" + name + "\"");
  return j;
}

template <class T>
void read_field(const json& j, const char* name, T& out) {
  if (!j.contains(name)) return;
  try {
    out = j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field \"") + name + "\" has the wrong type");
  }
}

}  // namespace

MotifEnsembleConfig motif_config_from_json(const std::string& text) {
  const auto j = parse_object(
      text, {"n_nodes", "avg_degree", "tau", "motif_fraction", "motif_sign", "seed"});
  MotifEnsembleConfig cfg;
  read_field(j, "n_nodes", cfg.n_nodes);
  read_field(j, "avg_degree", cfg.avg_degree);
  read_field(j, "tau", cfg.tau);
  read_field(j, "motif_fraction", cfg.motif_fraction);
  read_field(j, "motif_sign", cfg.motif_sign);
  read_field(j, "seed", cfg.seed);
  return cfg;
}

CirculantConfig circulant_config_from_json(const std::string& text) {
  const auto j = parse_object(text, {"n_nodes", "degree", "seed"});
  CirculantConfig cfg;
  read_field(j, "n_nodes", cfg.n_nodes);
  read_field(j, "degree", cfg.degree);
  read_field(j, "seed", cfg.seed);
  return cfg;
}

std::string to_json(const MotifEnsembleConfig& cfg) {
  json j{{"n_nodes", cfg.n_nodes},       {"avg_degree", cfg.avg_degree},
         {"tau", cfg.tau},               {"motif_fraction", cfg.motif_fraction},
         {"motif_sign", cfg.motif_sign}, {"seed", cfg.seed}};
  return j.dump();
}

std::string to_json(const CirculantConfig& cfg) {
  json j{{"n_nodes", cfg.n_nodes}, {"degree", cfg.degree}, {"seed", cfg.seed}};
  return j.dump();
}

}  // namespace cyclespec
