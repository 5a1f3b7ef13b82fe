#include "mmsim/herding.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "mmsim/errors.hpp"

namespace mmsim {

void drive(InformativeState& state, rng::Stream& rng) {
  const std::size_t n = state.info.size();
  assert(n > 0);

  double max_before = 0.0;
  for (double v : state.info) max_before = std::max(max_before, v);
  assert(max_before < state.threshold);

  const double width = state.threshold - max_before;
  for (double& v : state.info) v += rng.uniform(0.0, width);

  // Bring the (new) maximum agent exactly to the threshold: the shrinking
  // inflow alone approaches the threshold without ever crossing it.
  std::size_t argmax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (state.info[i] > state.info[argmax]) argmax = i;
  }
  state.info[argmax] = state.threshold;
}

AvalancheResult relax(InformativeState& state, const AdjacencyList& graph,
                      std::size_t max_topplings) {
  const int n = static_cast<int>(state.info.size());
  assert(n == graph.size());

  AvalancheResult result;
  std::deque<std::int32_t> queue;
  std::vector<bool> queued(static_cast<std::size_t>(n), false);

  for (int i = 0; i < n; ++i) {
    if (state.info[i] >= state.threshold) {
      queue.push_back(i);
      queued[i] = true;
    }
  }
  assert(!queue.empty());

  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    queued[k] = false;

    // Levels only grow between an agent's enqueue and its turn, so k is
    // still over threshold here.
    const double level = state.info[k];
    state.info[k] = 0.0;
    result.topplings.push_back(k);
    if (result.topplings.size() > max_topplings) {
      throw RunawayAvalancheError("relax: toppling cap exceeded; alpha >= 1 regime?");
    }

    const auto& ns = graph.neighbors[k];
    const double share = state.alpha * level / static_cast<double>(ns.size());
    for (int nb : ns) {
      state.info[nb] += share;
      if (state.info[nb] >= state.threshold && !queued[nb]) {
        queue.push_back(nb);
        queued[nb] = true;
      }
    }
  }

  result.trigger = result.topplings.front();
  result.participants.assign(result.topplings.begin(), result.topplings.end());
  std::sort(result.participants.begin(), result.participants.end());
  result.participants.erase(
      std::unique(result.participants.begin(), result.participants.end()),
      result.participants.end());
  return result;
}

}  // namespace mmsim
