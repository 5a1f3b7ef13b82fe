#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "mmsim/rng.hpp"

namespace mmsim {

// Undirected graph over agents 0..N-1, stored as per-node neighbor lists.
// Immutable after construction; shared read-only by the herding dynamics.
struct AdjacencyList {
  std::vector<std::vector<std::int32_t>> neighbors;

  int size() const { return static_cast<int>(neighbors.size()); }
  int degree(int i) const { return static_cast<int>(neighbors[i].size()); }
  bool has_edge(int i, int j) const;
  std::size_t edge_count() const;
};

// Open-boundary square lattice of side x side nodes with small-world
// rewiring: each lattice edge is, with probability rewiring_prob, replaced
// by an edge from its first endpoint to a random non-adjacent node.
// Self-loops, duplicate edges and moves that would isolate a node are
// rejected, so the edge count 2*side*(side-1) is preserved and every node
// keeps at least one neighbor.
AdjacencyList build_small_world(int side, double rewiring_prob, rng::Stream& rng);

// Edge list as "i,j" rows with i < j, for inspection.
void dump_edges_csv(const AdjacencyList& graph, std::ostream& out);

}  // namespace mmsim
