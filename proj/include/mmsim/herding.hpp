#pragma once

#include <cstdint>
#include <vector>

#include "mmsim/rng.hpp"
#include "mmsim/topology.hpp"

namespace mmsim {

// Per-agent information levels on the informative layer. Outside relaxation
// every level sits strictly below the shared threshold.
struct InformativeState {
  std::vector<double> info;
  double threshold = 1.0;
  double alpha = 0.95;  // fraction of a toppled level passed to neighbors
};

// One herding cascade. Topplings are ordered with multiplicity; participants
// are the distinct agents involved, sorted ascending.
struct AvalancheResult {
  int trigger = -1;
  std::vector<std::int32_t> topplings;
  std::vector<std::int32_t> participants;

  std::size_t size() const { return topplings.size(); }
};

// Uniform per-agent information inflow from [0, threshold - max_i info),
// then the maximum agent is raised exactly to the threshold so that every
// step produces one trigger. Requires all levels < threshold on entry.
void drive(InformativeState& state, rng::Stream& rng);

inline constexpr std::size_t kDefaultTopplingCap = 1'000'000;

// FIFO relaxation: each over-threshold agent in turn is zeroed and passes
// alpha/N_nn of its level to each neighbor; agents pushed over the threshold
// join the queue. Agents may topple more than once in a cascade. Throws
// RunawayAvalancheError past max_topplings (unreachable for alpha < 1).
AvalancheResult relax(InformativeState& state, const AdjacencyList& graph,
                      std::size_t max_topplings = kDefaultTopplingCap);

}  // namespace mmsim
