#include "mmsim/topology.hpp"

#include <algorithm>
#include <utility>

#include "mmsim/errors.hpp"

namespace mmsim {

bool AdjacencyList::has_edge(int i, int j) const {
  const auto& ns = neighbors[i];
  return std::find(ns.begin(), ns.end(), j) != ns.end();
}

std::size_t AdjacencyList::edge_count() const {
  std::size_t half_edges = 0;
  for (const auto& ns : neighbors) half_edges += ns.size();
  return half_edges / 2;
}

namespace {

void remove_neighbor(AdjacencyList& g, int i, int j) {
  auto& ns = g.neighbors[i];
  ns.erase(std::find(ns.begin(), ns.end(), j));
}

}  // namespace

AdjacencyList build_small_world(int side, double rewiring_prob, rng::Stream& rng) {
  if (side < 2) throw ConfigError("topology: side must be >= 2", {"side"});

  const int n = side * side;
  AdjacencyList g;
  g.neighbors.resize(n);

  // 4-neighbor lattice, open boundaries. Edges listed once as (node, right)
  // and (node, down); this is also the canonical rewiring order.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(2 * side * (side - 1)));
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      int u = r * side + c;
      if (c + 1 < side) edges.emplace_back(u, u + 1);
      if (r + 1 < side) edges.emplace_back(u, u + side);
    }
  }
  for (auto [u, v] : edges) {
    g.neighbors[u].push_back(v);
    g.neighbors[v].push_back(u);
  }

  constexpr int kMaxAttempts = 64;
  for (auto& [u, v] : edges) {
    if (rng.next_double() >= rewiring_prob) continue;
    if (g.degree(v) <= 1) continue;  // removing (u,v) would isolate v
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      int w = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
      if (w == u || w == v || g.has_edge(u, w)) continue;
      remove_neighbor(g, u, v);
      remove_neighbor(g, v, u);
      g.neighbors[u].push_back(w);
      g.neighbors[w].push_back(u);
      v = w;  // keep the stored edge list consistent
      break;
    }
  }

  return g;
}

void dump_edges_csv(const AdjacencyList& graph, std::ostream& out) {
  out << "i,j\n";
  for (int i = 0; i < graph.size(); ++i) {
    for (int j : graph.neighbors[i]) {
      if (i < j) out << i << "," << j << "\n";
    }
  }
}

}  // namespace mmsim
