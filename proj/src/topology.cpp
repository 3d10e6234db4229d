#include "ringnet/topology.hpp"

#include <string>

namespace ringnet {

Index Topology::subnet_of(Index neuron) const {
  for (Index s = 0; s < num_subnets(); ++s)
    if (subnets[s].contains(neuron)) return s;
  throw StructuralError("neuron " + std::to_string(neuron) + " belongs to no subnetwork");
}

std::vector<Index> Topology::successors(Index i) const {
  std::vector<Index> out;
  for (Index k = 0; k < n_c(); ++k)
    if (kappa(i, k)) out.push_back(k);
  return out;
}

std::vector<Index> Topology::predecessors(Index i) const {
  std::vector<Index> out;
  for (Index k = 0; k < n_c(); ++k)
    if (kappa(k, i)) out.push_back(k);
  return out;
}

void validate(const Topology& topo, RingRule rule) {
  const Index n = topo.n_c();
  if (n == 0) throw StructuralError("topology is empty");
  if (topo.kappa.cols() != n) throw StructuralError("kappa is not square");
  require_size(topo.tau.size(), n, "tau");
  if (topo.n_fb < 1 || topo.n_actions < 1)
    throw StructuralError("n_fb and n_actions must be positive");
  for (Index i = 0; i < n; ++i) {
    if (!(topo.tau[i] > 0.0 && topo.tau[i] < 1.0))
      throw StructuralError("tau[" + std::to_string(i) + "] outside (0,1)");
    if (topo.kappa(i, i)) throw StructuralError("kappa has a nonzero diagonal");
    for (Index k = i + 1; k < n; ++k)
      if (topo.kappa(i, k) && topo.kappa(k, i))
        throw StructuralError("reciprocal transitions between " + std::to_string(i) + " and " +
                              std::to_string(k));
  }

  Index next = 0;
  for (const SubnetRange& r : topo.subnets) {
    if (r.begin != next) throw StructuralError("subnetwork ranges are not contiguous");
    if (rule == RingRule::kExactlyFour && r.size != kRingSize)
      throw StructuralError("subnetwork size must be 4");
    if (r.size < 3) throw StructuralError("subnetwork size must be at least 3");
    next = r.end();
  }
  if (next != n) throw StructuralError("subnetwork ranges do not cover every neuron");

  // Inside each range: every neuron has exactly one internal successor and
  // following them from the first neuron visits the whole range.
  for (const SubnetRange& r : topo.subnets) {
    std::vector<Index> succ(r.size, -1);
    for (Index j = 0; j < r.size; ++j) {
      Index count = 0;
      for (Index k = 0; k < r.size; ++k)
        if (topo.kappa(r.begin + j, r.begin + k)) {
          succ[j] = k;
          ++count;
        }
      if (count != 1)
        throw StructuralError("neuron " + std::to_string(r.begin + j) +
                              " does not have exactly one in-ring successor");
    }
    Index cur = 0;
    for (Index step = 1; step < r.size; ++step) {
      cur = succ[cur];
      if (cur == 0) throw StructuralError("ring transitions do not form a single cycle");
    }
    if (succ[cur] != 0) throw StructuralError("ring transitions do not form a single cycle");
  }
}

Index append_ring(Topology& topo, double tau, Index ring_size) {
  if (ring_size < 3) throw StructuralError("a ring needs at least 3 neurons");
  const Index n = topo.n_c();
  const Index m = n + ring_size;
  BoolMat kappa = BoolMat::Constant(m, m, false);
  kappa.topLeftCorner(n, n) = topo.kappa;
  for (Index j = 0; j < ring_size; ++j) kappa(n + j, n + (j + 1) % ring_size) = true;
  topo.kappa = std::move(kappa);
  topo.tau.conservativeResize(m);
  topo.tau.tail(ring_size).setConstant(tau);
  topo.subnets.push_back({n, ring_size});
  return topo.num_subnets() - 1;
}

Topology make_ring_topology(Index n_fb, Index n_actions, double tau, Index ring_size) {
  Topology topo;
  topo.n_fb = n_fb;
  topo.n_actions = n_actions;
  topo.kappa.resize(0, 0);
  topo.tau.resize(0);
  append_ring(topo, tau, ring_size);
  return topo;
}

Topology make_chain_topology(Index num_subnets, Index n_fb, Index n_actions, double tau) {
  if (num_subnets < 1) throw PreconditionError("need at least one subnetwork");
  Topology topo = make_ring_topology(n_fb, n_actions, tau);
  for (Index s = 1; s < num_subnets; ++s) {
    const Index old_begin = topo.subnets[s - 1].begin;
    const Index fresh = topo.subnets[append_ring(topo, tau)].begin;
    topo.kappa(old_begin, fresh) = true;
    topo.kappa(fresh + kRingSize - 1, old_begin + 1) = true;
  }
  return topo;
}

}  // namespace ringnet
