#pragma once

#include "ringnet/episode.hpp"
#include "ringnet/rng.hpp"

namespace ringnet {

// True for W_sup entries linking different subnetworks.
BoolMat cross_subnet_mask(const Topology& topo);

// Draws an offset for every W_mot entry and every cross-subnetwork W_sup
// entry, in that order. With supplementary off the W_sup draws still happen
// and are discarded, so runs with and without it see the same stream.
Perturbation sample_perturbation(const LearnableParams<double>& params, const Topology& topo, Rng& rng,
                                 bool supplementary = true);

LearnableParams<double> apply_perturbation(const LearnableParams<double>& params,
                                           const Perturbation& offset);

struct SampledParams {
  LearnableParams<double> params;
  Perturbation offset;
};

SampledParams sample_parameters(const LearnableParams<double>& params, const Topology& topo, Rng& rng,
                                bool supplementary = true);

}  // namespace ringnet
