#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cyclespec/cycle_stats.hpp"
#include "cyclespec/ensembles.hpp"
#include "cyclespec/errors.hpp"

using namespace cyclespec;

namespace {

MotifEnsembleConfig motif(std::size_t n, double k, std::size_t tau, double f, int sign,
                          std::uint64_t seed) {
  MotifEnsembleConfig c;
  c.n_nodes = n;
  c.avg_degree = k;
  c.tau = tau;
  c.motif_fraction = f;
  c.motif_sign = sign;
  c.seed = seed;
  return c;
}

bool has_edge(const DirectedWeightedGraph& g, NodeId a, NodeId b, double* w = nullptr) {
  const auto row = g.out_edges(a);
  const auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const Edge& e, NodeId d) { return e.dst < d; });
  if (it == row.end() || it->dst != b) return false;
  if (w) *w = it->weight;
  return true;
}

// Directed 3-cycles a -> b -> c -> a with a the smallest node, split by the
// sign of the weight product.
std::pair<std::size_t, std::size_t> count_three_cycles(const DirectedWeightedGraph& g) {
  std::size_t pos = 0, neg = 0;
  for (const auto& ab : g.edges()) {
    for (const auto& bc : g.out_edges(ab.dst)) {
      if (ab.src >= ab.dst || ab.src >= bc.dst) continue;
      double w = 0.0;
      if (!has_edge(g, bc.dst, ab.src, &w)) continue;
      (ab.weight * bc.weight * w > 0 ? pos : neg) += 1;
    }
  }
  return {pos, neg};
}

struct Summary {
  double mean = 0.0, se = 0.0;
};

Summary summarize(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= static_cast<double>(xs.size() - 1);
  return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

}  // namespace

TEST_CASE("motif graph has the configured size and magnitudes") {
  const auto cfg = motif(5000, 20.0, 3, 0.5, 1, 11);
  CHECK(cfg.edge_count() == 100000);
  CHECK(cfg.planted_cycle_count() == 16666);
  const auto g = generate_motif_graph(cfg);
  CHECK(g.n_nodes() == 5000);
  CHECK(g.n_edges() == 100000);
  const double w = std::sqrt(5000.0 / 100000.0);
  for (const auto& e : g.edges()) {
    CHECK(e.src != e.dst);
    CHECK(std::abs(e.weight) == doctest::Approx(w).epsilon(1e-15));
  }
  const auto [pos, neg] = count_three_cycles(g);
  CHECK(pos >= 16666);
  CHECK(pos > neg + 16666 / 2);
  CHECK(rho_power_trace(g, 3).at(3) > 0.0);
}

TEST_CASE("nine nodes with f = 1 give three disjoint negative 3-cycles") {
  const auto g = generate_motif_graph(motif(9, 1.0, 3, 1.0, -1, 5));
  REQUIRE(g.n_edges() == 9);
  std::set<NodeId> seen;
  for (NodeId start = 0; start < 9; ++start) {
    REQUIRE(g.out_edges(start).size() == 1);
    if (seen.count(start)) continue;
    NodeId v = start;
    double product = 1.0;
    std::size_t len = 0;
    do {
      const auto e = g.out_edges(v)[0];
      product *= e.weight;
      seen.insert(v);
      v = e.dst;
      ++len;
    } while (v != start && len < 10);
    CHECK(len == 3);
    CHECK(product < 0.0);
  }
  CHECK(seen.size() == 9);
}

TEST_CASE("planted cycles carry the configured sign") {
  for (int sign : {1, -1}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto g = generate_motif_graph(motif(600, 6.0, 3, 0.6, sign, seed));
      const auto [pos, neg] = count_three_cycles(g);
      const std::size_t planted = static_cast<std::size_t>(0.6 * 3600 / 3);
      CHECK((sign > 0 ? pos : neg) >= planted);
    }
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const auto a = generate_motif_graph(motif(300, 5.0, 4, 0.3, 1, 42));
  const auto b = generate_motif_graph(motif(300, 5.0, 4, 0.3, 1, 42));
  const auto c = generate_motif_graph(motif(300, 5.0, 4, 0.3, 1, 43));
  CHECK(format_edge_list(a) == format_edge_list(b));
  CHECK(format_edge_list(a) != format_edge_list(c));
}

TEST_CASE("sign of rho_tau follows the motif sign, other lengths stay at noise level") {
  for (std::size_t tau : {3, 4}) {
    for (int sign : {1, -1}) {
      std::vector<std::vector<double>> by_length(8);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = generate_motif_graph(motif(500, 10.0, tau, 0.5, sign, 1000 + seed));
        const auto rho = rho_power_trace(g, 8);
        if (seed < 10) CHECK(rho.at(tau) * sign > 0.0);
        for (std::size_t l = 1; l <= 8; ++l) by_length[l - 1].push_back(rho.at(l));
      }
      for (std::size_t l = 1; l <= 8; ++l) {
        if (l % tau == 0) continue;
        const auto s = summarize(by_length[l - 1]);
        CAPTURE(tau);
        CAPTURE(sign);
        CAPTURE(l);
        CHECK(std::abs(s.mean) <= 3.0 * s.se + 1e-12);
      }
    }
  }
}

TEST_CASE("motif fraction zero gives an unstructured ensemble") {
  std::vector<std::vector<double>> by_length(6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cfg = motif(2000, 20.0, 3, 0.0, 1, 7000 + seed);
    CHECK(cfg.planted_cycle_count() == 0);
    const auto g = generate_motif_graph(cfg);
    const double w = cfg.weight_magnitude();
    for (const auto& e : g.edges()) REQUIRE(std::abs(e.weight) == w);
    const auto rho = rho_power_trace(g, 6);
    for (std::size_t l = 1; l <= 6; ++l) by_length[l - 1].push_back(rho.at(l));
  }
  for (std::size_t l = 1; l <= 6; ++l) {
    const auto s = summarize(by_length[l - 1]);
    CAPTURE(l);
    CHECK(std::abs(s.mean) <= 3.0 * s.se + 1e-12);
  }
}

TEST_CASE("motif configuration errors") {
  CHECK_THROWS_WITH_AS(motif(100, 5.0, 1, 0.5, 1, 0).validate(), "tau must be >= 2 (got 1)",
                       ConfigError);
  CHECK_THROWS_AS(motif(100, 5.0, 3, 1.5, 1, 0).validate(), ConfigError);
  CHECK_THROWS_AS(motif(100, 5.0, 3, -0.1, 1, 0).validate(), ConfigError);
  CHECK_THROWS_AS(motif(100, 5.0, 3, 0.5, 0, 0).validate(), ConfigError);
  CHECK_THROWS_AS(motif(100, 0.0, 3, 0.5, 1, 0).validate(), ConfigError);
  CHECK_THROWS_AS(motif(5, 5.0, 3, 0.5, 1, 0).validate(), ConfigError);
  CHECK_THROWS_AS(motif(100, 0.02, 3, 0.5, 1, 0).validate(), ConfigError);
  CHECK_THROWS_AS(motif(4, 1.0, 5, 0.5, 1, 0).validate(), ConfigError);
  CHECK_THROWS_AS(generate_motif_graph(motif(100, 5.0, 1, 0.5, 1, 0)), ConfigError);
  CHECK_NOTHROW(motif(100, 5.0, 3, 0.0, 1, 0).validate());
}

TEST_CASE("circulant of degree 2 on ten nodes") {
  const auto g = generate_circulant({10, 2, 3});
  CHECK(g.n_edges() == 20);
  const auto row = g.out_edges(0);
  REQUIRE(row.size() == 2);
  CHECK(row[0].dst == 1);
  CHECK(row[1].dst == 2);
  for (const auto& e : g.edges()) CHECK(std::abs(e.weight) == 1.0);
}

TEST_CASE("all-positive three-node circulant is the cyclic permutation") {
  std::uint64_t seed = 0;
  for (;; ++seed) {
    const auto g = generate_circulant({3, 1, seed});
    const bool all_positive =
        std::all_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.weight > 0; });
    if (all_positive) break;
    REQUIRE(seed < 200);
  }
  const auto g = generate_circulant({3, 1, seed});
  CHECK(g == DirectedWeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}));
}

TEST_CASE("large circulant has exact in- and out-degree") {
  const auto g = generate_circulant({5000, 3, 9});
  std::vector<std::size_t> in(5000, 0);
  for (NodeId n = 0; n < 5000; ++n) CHECK(g.out_edges(n).size() == 3);
  for (const auto& e : g.edges()) ++in[e.dst];
  CHECK(std::all_of(in.begin(), in.end(), [](std::size_t c) { return c == 3; }));
}

TEST_CASE("circulant support is shift invariant") {
  for (std::size_t d = 1; d <= 6; ++d) {
    const std::size_t n = 37;
    const auto g = generate_circulant({n, d, d});
    for (NodeId r = 0; r < n; ++r) {
      for (std::size_t k = 1; k <= d; ++k) CHECK(has_edge(g, r, static_cast<NodeId>((r + k) % n)));
      CHECK(g.out_edges(r).size() == d);
    }
  }
}

TEST_CASE("circulant configuration errors") {
  CHECK_THROWS_AS(generate_circulant({10, 10, 0}), ConfigError);
  CHECK_THROWS_AS(generate_circulant({10, 0, 0}), ConfigError);
  CHECK_THROWS_AS(generate_circulant({1, 1, 0}), ConfigError);
}

TEST_CASE("configuration JSON round trip") {
  const auto m = motif(2000, 20.0, 4, 0.75, -1, 123456789012345ULL);
  const auto back = motif_config_from_json(to_json(m));
  CHECK(back.n_nodes == m.n_nodes);
  CHECK(back.avg_degree == m.avg_degree);
  CHECK(back.tau == m.tau);
  CHECK(back.motif_fraction == m.motif_fraction);
  CHECK(back.motif_sign == m.motif_sign);
  CHECK(back.seed == m.seed);

  const CirculantConfig c{500, 4, 77};
  const auto cb = circulant_config_from_json(to_json(c));
  CHECK(cb.n_nodes == 500);
  CHECK(cb.degree == 4);
  CHECK(cb.seed == 77);

  CHECK_THROWS_AS(motif_config_from_json(R"({"n_nodes": 10, "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(circulant_config_from_json("not json"), ParseError);
}
