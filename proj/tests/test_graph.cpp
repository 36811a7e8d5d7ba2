#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cyclespec/errors.hpp"
#include "cyclespec/graph.hpp"
#include "oracles.hpp"

using namespace cyclespec;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cyclespec_test_graph_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

DirectedWeightedGraph three_cycle(double last = 1.0) {
  return DirectedWeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, last}});
}

}  // namespace

TEST_CASE("matvec follows edge direction") {
  const auto g = three_cycle();
  const std::vector<double> v{1.0, 0.0, 0.0};
  CHECK(matvec(g, v) == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("matvec on an edgeless graph is zero") {
  const auto g = DirectedWeightedGraph::from_edges(4, {});
  const std::vector<double> v{1.0, -2.0, 3.0, 4.0};
  CHECK(matvec(g, v) == std::vector<double>(4, 0.0));
  CHECK(g.n_edges() == 0);
}

TEST_CASE("matvec rejects a vector of the wrong length") {
  const auto g = three_cycle();
  const std::vector<double> v{1.0, 0.0};
  CHECK_THROWS_AS(matvec(g, v), ContractError);
}

TEST_CASE("matvec agrees with the dense product") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(5, 3 + seed % 20, seed);
    const auto m = oracle::adjacency(g);
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(5);
    for (auto& x : v) x = u(eng);
    const auto got = matvec(g, v);
    for (std::size_t j = 0; j < 5; ++j) {
      double want = 0.0;
      for (std::size_t i = 0; i < 5; ++i) want += v[i] * m[i * 5 + j];
      CHECK(got[j] == doctest::Approx(want).epsilon(1e-14));
    }
  }
}

TEST_CASE("repeated matvec reproduces rows of the matrix power") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 2 + (seed * 7) % 31;
    const auto g = oracle::random_graph(n, 3 * n, 100 + seed);
    for (std::size_t power = 1; power <= 5; ++power) {
      const auto p = oracle::matrix_power(g, power);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        for (std::size_t s = 0; s < power; ++s) v = matvec(g, v);
        for (std::size_t j = 0; j < n; ++j)
          CHECK(std::abs(v[j] - p[i * n + j]) <= 1e-12 * std::max(1.0, std::abs(p[i * n + j])));
      }
    }
  }
}

TEST_CASE("to_dense of a two-node graph") {
  const auto g = DirectedWeightedGraph::from_edges(2, {{0, 1, 0.5}, {1, 0, -2.0}});
  const auto d = to_dense(g);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == 0.5);
  CHECK(d(1, 0) == -2.0);
  CHECK(d(1, 1) == 0.0);
}

TEST_CASE("to_dense of a circulant has d nonzeros per row") {
  std::vector<Edge> edges;
  for (NodeId n = 0; n < 10; ++n)
    for (NodeId k = 1; k <= 2; ++k) edges.push_back({n, (n + k) % 10, 1.0});
  const auto d = to_dense(DirectedWeightedGraph::from_edges(10, edges));
  for (std::size_t r = 0; r < 10; ++r) {
    std::size_t nz = 0;
    for (std::size_t c = 0; c < 10; ++c) nz += d(r, c) != 0.0;
    CHECK(nz == 2);
    CHECK(d(r, (r + 1) % 10) == 1.0);
    CHECK(d(r, (r + 2) % 10) == 1.0);
  }
}

TEST_CASE("dense trace is the self-loop weight sum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(7, 25, seed);
    CHECK(to_dense(g).trace() == doctest::Approx(g.self_loop_weight_sum()).epsilon(1e-14));
  }
}

TEST_CASE("to_dense enforces the size limit") {
  const auto g = DirectedWeightedGraph::from_edges(20, {});
  CHECK_THROWS_AS(to_dense(g, 19), CapacityError);
  CHECK_NOTHROW(to_dense(g, 20));
}

TEST_CASE("from_dense inverts to_dense") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(9, 30, seed);
    CHECK(from_dense(to_dense(g)) == g);
  }
}

TEST_CASE("construction order does not matter") {
  const std::vector<Edge> a{{0, 1, 1.0}, {2, 0, 3.0}, {1, 2, -1.0}};
  const std::vector<Edge> b{{1, 2, -1.0}, {0, 1, 1.0}, {2, 0, 3.0}};
  CHECK(DirectedWeightedGraph::from_edges(3, a) == DirectedWeightedGraph::from_edges(3, b));
}

TEST_CASE("invalid edges are rejected") {
  CHECK_THROWS_AS(DirectedWeightedGraph::from_edges(2, {{0, 2, 1.0}}), RangeError);
  CHECK_THROWS_AS(DirectedWeightedGraph::from_edges(2, {{0, 1, 0.0}}), ContractError);
  CHECK_THROWS_AS(DirectedWeightedGraph::from_edges(2, {{0, 1, NAN}}), ContractError);
  CHECK_THROWS_AS(DirectedWeightedGraph::from_edges(2, {{0, 1, INFINITY}}), ContractError);
  CHECK_THROWS_AS(DirectedWeightedGraph::from_edges(2, {{0, 1, 1.0}, {0, 1, 2.0}}), ContractError);
}

TEST_CASE("out_edges lists a row in destination order") {
  const auto g = DirectedWeightedGraph::from_edges(4, {{1, 3, 1.0}, {1, 0, 2.0}, {2, 1, 1.0}});
  const auto row = g.out_edges(1);
  REQUIRE(row.size() == 2);
  CHECK(row[0].dst == 0);
  CHECK(row[1].dst == 3);
  CHECK(g.out_edges(0).empty());
  CHECK(g.mean_out_degree() == doctest::Approx(0.75));
}

TEST_CASE("parse a one-edge list") {
  const auto g = parse_edge_list("# nodes=2\n0\t1\t1.0\n");
  REQUIRE(g.n_nodes() == 2);
  REQUIRE(g.n_edges() == 1);
  CHECK(g.edges()[0] == Edge{0, 1, 1.0});
}

TEST_CASE("comments and blank lines are skipped") {
  const auto g = parse_edge_list("# nodes=3\n\n# a comment\n0\t1\t2.5\n  \n2\t0\t-1\n");
  CHECK(g.n_edges() == 2);
}

TEST_CASE("edge-list round trip is lossless") {
  const auto dir = scratch_dir("roundtrip");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto base = oracle::random_graph(50, 400, seed);
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    for (auto& e : edges) e.weight = std::nextafter(e.weight * 1.0000001, 2.0);
    const auto g = DirectedWeightedGraph::from_edges(50, edges);
    const auto path = dir / ("g" + std::to_string(seed) + ".tsv");
    write_edge_list(g, path);
    CHECK(read_edge_list(path) == g);
    CHECK(format_edge_list(read_edge_list(path)) == format_edge_list(g));
  }
}

TEST_CASE("written edge list is sorted and headed") {
  const auto g = DirectedWeightedGraph::from_edges(3, {{2, 0, 1.0}, {0, 1, -0.5}});
  CHECK(format_edge_list(g) == "# nodes=3\n0\t1\t-0.5\n2\t0\t1\n");
}

TEST_CASE("malformed edge lists report the line") {
  SUBCASE("missing header") {
    CHECK_THROWS_AS(parse_edge_list("0\t1\t1.0\n"), ParseError);
  }
  SUBCASE("bad field count") {
    try {
      parse_edge_list("# nodes=3\n0\t1\t1.0\n1\t2\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-numeric weight") {
    try {
      parse_edge_list("# nodes=3\n0\t1\tabc\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("duplicate edge") {
    CHECK_THROWS_AS(parse_edge_list("# nodes=3\n0\t1\t1.0\n0\t1\t2.0\n"), ParseError);
  }
  SUBCASE("zero weight") {
    CHECK_THROWS_AS(parse_edge_list("# nodes=3\n0\t1\t0\n"), ParseError);
  }
  SUBCASE("index out of range") {
    try {
      parse_edge_list("# nodes=3\n0\t1\t1.0\n3\t0\t1.0\n");
      FAIL("expected RangeError");
    } catch (const RangeError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}

TEST_CASE("reading a missing file is an IO error") {
  CHECK_THROWS_AS(read_edge_list("/nonexistent/cyclespec/graph.tsv"), IoError);
}
