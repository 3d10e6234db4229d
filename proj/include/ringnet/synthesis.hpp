#pragma once

#include "ringnet/net_core.hpp"

#include <vector>

namespace ringnet {

struct BoundaryParams {
  double omega = 6.0;   // saturation level
  double gamma = 0.0;   // excitation level
  double iota = 0.95;   // fully active level
  double eps = 0.01;    // inactive level
  double n_neigh = 10;  // max neighbor count
};

// Throws DegenerateParamsError when the condition number exceeds 1e12.
CParams solve_c_params(const BoundaryParams& bp);

// Condition number of the 5x5 boundary-condition system.
double condition_number(const BoundaryParams& bp);

template <typename Scalar = double>
FixedWeights<Scalar> build_fixed_weights(const Topology& topo, const CParams& cp,
                                         RingRule rule = RingRule::kExactlyFour) {
  validate(topo, rule);
  using T = Eigen::Triplet<Scalar>;
  const Index n = topo.n_c();
  std::vector<T> gate, cc, cb, bc;
  FixedWeights<Scalar> fw;
  fw.c_params = cp;
  fw.w_CI = Vec<Scalar>::Zero(n);
  fw.b_C = Vec<Scalar>::Constant(n, Scalar(cp.bias));
  fw.w_BB = (Scalar(1) - topo.tau.template cast<Scalar>().array()).matrix();

  for (Index i = 0; i < n; ++i) {
    const bool dep = topo.feedback_dependent(i);
    const Scalar tau_i = Scalar(topo.tau[i]);
    if (dep) fw.w_CI[i] = Scalar(cp.w_trigger);
    cc.emplace_back(i, i, Scalar(cp.w_self));
    bc.emplace_back(i, i, tau_i);
    for (Index k = 0; k < n; ++k) {
      if (topo.kappa(k, i)) {
        cc.emplace_back(i, k, Scalar(cp.w_prev));
        if (dep)
          gate.emplace_back(i, k, Scalar(1));
        else
          cb.emplace_back(i, k, Scalar(cp.w_trigger));
      }
      if (topo.kappa(i, k)) cc.emplace_back(i, k, Scalar(cp.w_next));
    }
    const std::vector<Index> succ = topo.successors(i);
    for (Index j : succ) bc.emplace_back(i, j, Scalar(-0.5) * tau_i);
    std::vector<Index> second;
    for (Index j : succ)
      for (Index k : topo.successors(j))
        if (k != i && !topo.kappa(i, k) && std::find(second.begin(), second.end(), k) == second.end())
          second.push_back(k);
    for (Index k : second) bc.emplace_back(i, k, Scalar(-0.25) * tau_i);
  }

  auto assemble = [n](SparseMat<Scalar>& m, const std::vector<T>& trip) {
    m.resize(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
  };
  assemble(fw.W_I_gate, gate);
  assemble(fw.W_CC, cc);
  assemble(fw.W_CB, cb);
  assemble(fw.W_BC, bc);
  return fw;
}

template <typename Scalar = double>
FixedWeights<Scalar> build_fixed_weights(const Topology& topo, const BoundaryParams& bp = {},
                                         RingRule rule = RingRule::kExactlyFour) {
  return build_fixed_weights<Scalar>(topo, solve_c_params(bp), rule);
}

}  // namespace ringnet
