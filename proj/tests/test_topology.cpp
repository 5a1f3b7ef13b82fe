#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "mmsim/errors.hpp"
#include "mmsim/topology.hpp"

using namespace mmsim;

namespace {

// The four structural invariants every built graph must satisfy.
void check_invariants(const AdjacencyList& g, int side) {
  const int n = side * side;
  REQUIRE(g.size() == n);
  CHECK(g.edge_count() == static_cast<std::size_t>(2 * side * (side - 1)));

  for (int i = 0; i < n; ++i) {
    CHECK(g.degree(i) >= 1);
    std::set<int> seen;
    for (int j : g.neighbors[i]) {
      CHECK(j != i);                       // no self-loops
      CHECK(seen.insert(j).second);        // no duplicates
      CHECK(g.has_edge(j, i));             // symmetry
    }
  }
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("3x3 un-rewired lattice") {
  auto rng = rng::derive(7, rng::Tag::Topology);
  const AdjacencyList g = build_small_world(3, 0.0, rng);
  CHECK(g.size() == 9);
  CHECK(g.edge_count() == 12);
  // corners of the open lattice
  for (int corner : {0, 2, 6, 8}) CHECK(g.degree(corner) == 2);
  CHECK(g.degree(4) == 4);  // center
}

TEST_CASE("2x2 lattice") {
  auto rng = rng::derive(1, rng::Tag::Topology);
  const AdjacencyList g = build_small_world(2, 0.0, rng);
  CHECK(g.size() == 4);
  CHECK(g.edge_count() == 4);
  for (int i = 0; i < 4; ++i) CHECK(g.degree(i) == 2);
}

TEST_CASE("30x30 rewired graph keeps 1740 edges") {
  auto rng = rng::derive(12345, rng::Tag::Topology);
  const AdjacencyList g = build_small_world(30, 0.1, rng);
  CHECK(g.size() == 900);
  std::size_t counted = 0;
  for (int i = 0; i < g.size(); ++i) {
    for (int j : g.neighbors[i]) {
      if (i < j) ++counted;
    }
  }
  CHECK(counted == 1740);  // 2 * 30 * 29
}

TEST_CASE("invariants hold across seeds and rewiring probabilities") {
  for (std::uint64_t seed : {1ull, 2ull, 99ull, 4242ull}) {
    for (double p : {0.0, 0.05, 0.3, 1.0}) {
      for (int side : {2, 5, 12}) {
        auto rng = rng::derive(seed, rng::Tag::Topology);
        check_invariants(build_small_world(side, p, rng), side);
      }
    }
  }
}

TEST_CASE("zero rewiring yields the same lattice for every seed") {
  auto a_rng = rng::derive(11, rng::Tag::Topology);
  auto b_rng = rng::derive(999999, rng::Tag::Topology);
  const AdjacencyList a = build_small_world(6, 0.0, a_rng);
  const AdjacencyList b = build_small_world(6, 0.0, b_rng);
  CHECK(a.neighbors == b.neighbors);
}

TEST_CASE("identical seed reproduces the graph") {
  auto a_rng = rng::derive(77, rng::Tag::Topology);
  auto b_rng = rng::derive(77, rng::Tag::Topology);
  const AdjacencyList a = build_small_world(10, 0.25, a_rng);
  const AdjacencyList b = build_small_world(10, 0.25, b_rng);
  CHECK(a.neighbors == b.neighbors);
}

TEST_CASE("rewiring actually moves edges") {
  auto lattice_rng = rng::derive(5, rng::Tag::Topology);
  auto rewired_rng = rng::derive(5, rng::Tag::Topology);
  const AdjacencyList lattice = build_small_world(10, 0.0, lattice_rng);
  const AdjacencyList rewired = build_small_world(10, 0.3, rewired_rng);
  CHECK(lattice.neighbors != rewired.neighbors);
}

TEST_CASE("side below 2 is rejected") {
  auto rng = rng::derive(1, rng::Tag::Topology);
  CHECK_THROWS_AS(build_small_world(1, 0.0, rng), ConfigError);
  CHECK_THROWS_AS(build_small_world(0, 0.0, rng), ConfigError);
}

TEST_CASE("edge dump lists each edge once with i < j") {
  auto rng = rng::derive(3, rng::Tag::Topology);
  const AdjacencyList g = build_small_world(3, 0.0, rng);
  std::ostringstream out;
  dump_edges_csv(g, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "i,j");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const int i = std::stoi(line.substr(0, comma));
    const int j = std::stoi(line.substr(comma + 1));
    CHECK(i < j);
    CHECK(g.has_edge(i, j));
    ++rows;
  }
  CHECK(rows == g.edge_count());
}

}  // TEST_SUITE
