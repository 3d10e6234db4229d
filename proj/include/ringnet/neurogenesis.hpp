#pragma once

#include "ringnet/episode.hpp"
#include "ringnet/synthesis.hpp"

#include <string>

namespace ringnet {

struct NoveltyEvidence {
  bool value_breach = false;
  Index value_t = -1;  // first breaching timestep
  bool obs_breach = false;
  Index obs_channel = -1;
  Index obs_t = -1;
  bool co_occurrence = false;
  Index co_t = -1;  // first timestep where both breaches hold
};

// Value breach at t: R[t] below the horizon-summed value prediction minus the
// recorded deviation. Observation breach at t: some |fb_i - o_i| > odev_i.
NoveltyEvidence detect_novelty(const EpisodeTrace& trace, Index H);

// Remembers the last episode that grew so a second growth in the same
// episode is refused.
class GrowthGuard {
 public:
  void claim(long episode);
  long last_episode() const { return last_; }
  void restore(long episode) { last_ = episode; }

 private:
  long last_ = -1;
};

struct GrowthResult {
  Topology topo;
  FixedWeights<double> fixed;
  LearnableParams<double> params;
  Index new_subnet = -1;
  Index forward_from = -1;  // old neuron feeding the new entry neuron
  Index return_to = -1;     // old neuron receiving the return transition
};

// Appends a 4-ring connected to active_sub: old neuron at `phase` -> new
// entry, new last neuron -> old neuron at phase + 1. Learned weights are
// copied from `source_sub` by local index (motor, value, observation).
GrowthResult grow_subnetwork(const Topology& topo, const FixedWeights<double>& fixed,
                             const LearnableParams<double>& params, Index active_sub, Index phase,
                             long episode, GrowthGuard& guard, Index source_sub = -1,
                             double sigma_init = 0.05);

// DOT digraph, one cluster per subnetwork, node names sub<k>/C<i>. Edges into
// feedback-dependent neurons carry the two strongest classifier channels.
std::string export_behavior_graph(const Topology& topo, const LearnableParams<double>& params);

}  // namespace ringnet
