#pragma once

#include "ringnet/common.hpp"

#include <vector>

namespace ringnet {

inline constexpr Index kRingSize = 4;

struct SubnetRange {
  Index begin = 0;
  Index size = kRingSize;

  Index end() const { return begin + size; }
  bool contains(Index i) const { return i >= begin && i < end(); }
  bool operator==(const SubnetRange&) const = default;
};

// kappa(r, c) is the transition C_r -> C_c.
struct Topology {
  BoolMat kappa;
  std::vector<SubnetRange> subnets;
  Eigen::VectorXd tau;
  Index n_fb = 21;
  Index n_actions = 18;

  Index n_c() const { return kappa.rows(); }
  Index num_subnets() const { return static_cast<Index>(subnets.size()); }
  Index subnet_of(Index neuron) const;
  Index in_degree(Index i) const { return kappa.col(i).count(); }
  bool feedback_dependent(Index i) const { return in_degree(i) >= 2; }
  std::vector<Index> successors(Index i) const;
  std::vector<Index> predecessors(Index i) const;
};

enum class RingRule {
  kExactlyFour,  // controller networks
  kAtLeastThree  // rings programmed from demonstrations
};

// Throws StructuralError when an invariant does not hold.
void validate(const Topology& topo, RingRule rule = RingRule::kExactlyFour);

Topology make_ring_topology(Index n_fb, Index n_actions, double tau = 0.08,
                            Index ring_size = kRingSize);

// Appends a ring at the end of topo, no cross edges. Returns its index.
Index append_ring(Topology& topo, double tau, Index ring_size = kRingSize);

// k subnetworks, each new one attached to its predecessor the way growth
// attaches a subnetwork grown at phase 0.
Topology make_chain_topology(Index num_subnets, Index n_fb, Index n_actions, double tau = 0.08);

}  // namespace ringnet
