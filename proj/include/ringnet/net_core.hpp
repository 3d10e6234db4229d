#pragma once

#include "ringnet/common.hpp"
#include "ringnet/topology.hpp"

#include <algorithm>

namespace ringnet {

// Solution of the C-layer boundary conditions.
struct CParams {
  double w_prev = 0;
  double w_self = 0;
  double w_next = 0;
  double w_trigger = 0;
  double bias = 0;
};

template <typename Scalar = double>
struct FixedWeights {
  SparseMat<Scalar> W_I_gate;
  SparseMat<Scalar> W_CC;
  SparseMat<Scalar> W_CB;
  Vec<Scalar> w_CI;
  Vec<Scalar> b_C;
  SparseMat<Scalar> W_BC;
  Vec<Scalar> w_BB;
  CParams c_params;

  Index n_c() const { return b_C.size(); }
};

template <typename Scalar = double>
struct LearnableParams {
  Mat<Scalar> W_cls;  // n_c x n_fb
  Vec<Scalar> b_cls;
  Mat<Scalar> W_sup;  // n_c x n_c, unit diagonal
  Mat<Scalar> W_mot;  // n_actions x n_c
  Vec<Scalar> w_val;
  Vec<Scalar> w_valdev;
  Mat<Scalar> W_obs;     // n_fb x n_c
  Mat<Scalar> W_obsdev;  // n_fb x n_c
  Mat<Scalar> sigma_mot;
  Mat<Scalar> sigma_sup;
  Scalar eps_v = Scalar(0.02);
  Scalar eps_o = Scalar(0.02);

  Index n_c() const { return W_sup.rows(); }
  Index n_fb() const { return W_cls.cols(); }
  Index n_actions() const { return W_mot.rows(); }
};

template <typename Scalar = double>
struct NetworkState {
  Vec<Scalar> fb;
  Vec<Scalar> ip1;
  Vec<Scalar> ip2;
  Vec<Scalar> c;
  Vec<Scalar> b;
  Vec<Scalar> pm;
  Vec<Scalar> m;
  Scalar v = 0;
  Scalar vdev = 0;
  Vec<Scalar> o;
  Vec<Scalar> odev;
};

template <typename Scalar = double>
struct Outputs {
  Vec<Scalar> m;
  Scalar v = 0;
  Scalar vdev = 0;
  Vec<Scalar> o;
  Vec<Scalar> odev;
};

template <typename Scalar = double>
LearnableParams<Scalar> make_learnable_params(const Topology& topo, double sigma_init = 0.05) {
  const Index n = topo.n_c();
  LearnableParams<Scalar> p;
  p.W_cls = Mat<Scalar>::Zero(n, topo.n_fb);
  p.b_cls = Vec<Scalar>::Zero(n);
  p.W_sup = Mat<Scalar>::Identity(n, n);
  p.W_mot = Mat<Scalar>::Zero(topo.n_actions, n);
  p.w_val = Vec<Scalar>::Zero(n);
  p.w_valdev = Vec<Scalar>::Ones(n);
  p.W_obs = Mat<Scalar>::Zero(topo.n_fb, n);
  p.W_obsdev = Mat<Scalar>::Ones(topo.n_fb, n);
  p.sigma_mot = Mat<Scalar>::Constant(topo.n_actions, n, Scalar(sigma_init));
  p.sigma_sup = Mat<Scalar>::Constant(n, n, Scalar(sigma_init));
  return p;
}

// c of the first neuron in subnetwork `sub` at 0.95, every other c at 0.01.
template <typename Scalar = double>
NetworkState<Scalar> initial_state(const Topology& topo, const LearnableParams<Scalar>& params,
                                   Index sub = 0) {
  if (sub < 0 || sub >= topo.num_subnets()) throw PreconditionError("no such subnetwork");
  const Index n = topo.n_c();
  NetworkState<Scalar> s;
  s.fb = Vec<Scalar>::Zero(topo.n_fb);
  s.ip1 = Vec<Scalar>::Zero(n);
  s.ip2 = Vec<Scalar>::Zero(n);
  s.c = Vec<Scalar>::Constant(n, Scalar(0.01));
  s.c[topo.subnets[sub].begin] = Scalar(0.95);
  s.b = Vec<Scalar>::Zero(n);
  s.pm = Vec<Scalar>::Zero(n);
  s.m = Vec<Scalar>::Zero(topo.n_actions);
  s.v = 0;
  s.vdev = params.eps_v;
  s.o = Vec<Scalar>::Zero(topo.n_fb);
  s.odev = Vec<Scalar>::Constant(topo.n_fb, params.eps_o);
  return s;
}

template <typename Scalar, typename Derived>
Vec<Scalar> ip1_step(const Eigen::MatrixBase<Derived>& fb, const LearnableParams<Scalar>& params) {
  require_size(fb.size(), params.W_cls.cols(), "ip1_step fb");
  return (params.W_cls * fb + params.b_cls).unaryExpr([](Scalar x) { return sigmoid(x); });
}

template <typename Scalar, typename D1, typename D2, typename D3, typename D4>
Vec<Scalar> ip2_step(const Eigen::MatrixBase<D1>& ip2_prev, const Eigen::MatrixBase<D2>& ip1,
                     const Eigen::MatrixBase<D3>& c, const FixedWeights<Scalar>& fixed,
                     const Eigen::MatrixBase<D4>& tau) {
  const Index n = fixed.n_c();
  require_size(ip2_prev.size(), n, "ip2_step ip2");
  require_size(ip1.size(), n, "ip2_step ip1");
  require_size(c.size(), n, "ip2_step c");
  require_size(tau.size(), n, "ip2_step tau");
  Vec<Scalar> pre = fixed.W_I_gate * c;
  pre.array() += tau.array() * ip1.array() + (Scalar(1) - tau.array()) * ip2_prev.array() - Scalar(1);
  return pre.cwiseMax(Scalar(0));
}

template <typename Scalar, typename D1, typename D2, typename D3>
Vec<Scalar> cpg_step(const Eigen::MatrixBase<D1>& c, const Eigen::MatrixBase<D2>& b,
                     const Eigen::MatrixBase<D3>& ip2, const FixedWeights<Scalar>& fixed) {
  const Index n = fixed.n_c();
  require_size(c.size(), n, "cpg_step c");
  require_size(b.size(), n, "cpg_step b");
  require_size(ip2.size(), n, "cpg_step ip2");
  Vec<Scalar> pre = fixed.W_CC * c;
  pre += fixed.W_CB * b;
  pre.array() += fixed.w_CI.array() * ip2.array() + fixed.b_C.array();
  return pre.unaryExpr([](Scalar x) { return sigmoid(x); });
}

template <typename Scalar, typename D1, typename D2>
Vec<Scalar> basis_step(const Eigen::MatrixBase<D1>& b, const Eigen::MatrixBase<D2>& c,
                       const FixedWeights<Scalar>& fixed) {
  const Index n = fixed.n_c();
  require_size(b.size(), n, "basis_step b");
  require_size(c.size(), n, "basis_step c");
  Vec<Scalar> pre = fixed.W_BC * c;
  pre.array() += fixed.w_BB.array() * b.array();
  return pre.cwiseMax(Scalar(0));
}

template <typename Scalar, typename Derived>
Vec<Scalar> premotor_step(const Eigen::MatrixBase<Derived>& b, const LearnableParams<Scalar>& params) {
  require_size(b.size(), params.W_sup.cols(), "premotor_step b");
  return params.W_sup * b;
}

template <typename Scalar, typename D1, typename D2>
Outputs<Scalar> output_step(const Eigen::MatrixBase<D1>& pm, const Eigen::MatrixBase<D2>& b,
                            const LearnableParams<Scalar>& params) {
  const Index n = params.n_c();
  require_size(pm.size(), n, "output_step pm");
  require_size(b.size(), n, "output_step b");
  Outputs<Scalar> out;
  out.m = params.W_mot * pm;
  out.v = params.w_val.dot(b);
  out.vdev = std::max(params.eps_v, params.w_valdev.dot(b));
  out.o = params.W_obs * b;
  out.odev = (params.W_obsdev * b).cwiseMax(params.eps_o);
  return out;
}

template <typename Scalar>
void check_dimensions(const NetworkState<Scalar>& state, const Topology& topo,
                      const FixedWeights<Scalar>& fixed, const LearnableParams<Scalar>& params) {
  const Index n = topo.n_c();
  require_size(fixed.n_c(), n, "fixed weights");
  require_size(params.n_c(), n, "learnable params");
  require_size(params.W_cls.cols(), topo.n_fb, "W_cls columns");
  require_size(params.W_mot.rows(), topo.n_actions, "W_mot rows");
  require_size(params.W_obs.rows(), topo.n_fb, "W_obs rows");
  require_size(state.c.size(), n, "state c");
  require_size(state.b.size(), n, "state b");
  require_size(state.ip1.size(), n, "state ip1");
  require_size(state.ip2.size(), n, "state ip2");
}

// One discrete timestep. Every layer reads the previous state except that
// I' reads the new feedback and PM and the outputs read the new bases.
template <typename Scalar, typename Derived>
NetworkState<Scalar> network_forward(const NetworkState<Scalar>& state,
                                     const Eigen::MatrixBase<Derived>& fb, const Topology& topo,
                                     const FixedWeights<Scalar>& fixed,
                                     const LearnableParams<Scalar>& params) {
  check_dimensions(state, topo, fixed, params);
  require_size(fb.size(), topo.n_fb, "network_forward fb");
  const Vec<Scalar> tau = topo.tau.template cast<Scalar>();
  NetworkState<Scalar> next;
  next.fb = fb;
  next.ip1 = ip1_step(fb, params);
  next.ip2 = ip2_step(state.ip2, state.ip1, state.c, fixed, tau);
  next.c = cpg_step(state.c, state.b, state.ip2, fixed);
  next.b = basis_step(state.b, state.c, fixed);
  next.pm = premotor_step(next.b, params);
  Outputs<Scalar> out = output_step(next.pm, next.b, params);
  next.m = std::move(out.m);
  next.v = out.v;
  next.vdev = out.vdev;
  next.o = std::move(out.o);
  next.odev = std::move(out.odev);
  return next;
}

template <typename Scalar>
Index dominant(const Vec<Scalar>& x) {
  Index i = 0;
  x.maxCoeff(&i);
  return i;
}

}  // namespace ringnet
