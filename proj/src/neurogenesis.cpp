#include "ringnet/neurogenesis.hpp"

#include "ringnet/returns.hpp"

namespace ringnet {

NoveltyEvidence detect_novelty(const EpisodeTrace& trace, Index H) {
  const Index T = trace.length();
  if (T == 0) throw PreconditionError("empty trace");
  require_size(trace.returns.size(), T, "trace returns");
  Eigen::VectorXd v(T);
  for (Index t = 0; t < T; ++t) v[t] = trace.states[t].v;
  const Eigen::VectorXd sv = horizon_sum(v, H);

  NoveltyEvidence ev;
  for (Index t = 0; t < T; ++t) {
    const auto& s = trace.states[t];
    const bool vb = trace.returns[t] < sv[t] - s.vdev;
    Index channel = -1;
    for (Index i = 0; i < s.fb.size(); ++i)
      if (std::abs(s.fb[i] - s.o[i]) > s.odev[i]) {
        channel = i;
        break;
      }
    const bool ob = channel >= 0;
    if (vb && !ev.value_breach) {
      ev.value_breach = true;
      ev.value_t = t;
    }
    if (ob && !ev.obs_breach) {
      ev.obs_breach = true;
      ev.obs_channel = channel;
      ev.obs_t = t;
    }
    if (vb && ob && !ev.co_occurrence) {
      ev.co_occurrence = true;
      ev.co_t = t;
    }
  }
  return ev;
}

void GrowthGuard::claim(long episode) {
  if (episode == last_)
    throw GrowthRefusedError("a subnetwork already grew in episode " + std::to_string(episode));
  last_ = episode;
}

GrowthResult grow_subnetwork(const Topology& topo, const FixedWeights<double>& fixed,
                             const LearnableParams<double>& params, Index active_sub, Index phase,
                             long episode, GrowthGuard& guard, Index source_sub, double sigma_init) {
  if (active_sub < 0 || active_sub >= topo.num_subnets())
    throw PreconditionError("active subnetwork out of range");
  if (source_sub < 0) source_sub = active_sub;
  if (source_sub >= topo.num_subnets()) throw PreconditionError("source subnetwork out of range");
  if (phase < 0 || phase >= kRingSize) throw PreconditionError("phase out of range");
  require_size(params.n_c(), topo.n_c(), "grow_subnetwork params");
  guard.claim(episode);

  const Index n = topo.n_c();
  const SubnetRange old_r = topo.subnets[active_sub];
  const SubnetRange src = topo.subnets[source_sub];

  GrowthResult g;
  g.topo = topo;
  g.new_subnet = append_ring(g.topo, topo.tau[old_r.begin + phase]);
  g.topo.tau.tail(kRingSize) = topo.tau.segment(src.begin, kRingSize);
  const Index e = n;
  g.forward_from = old_r.begin + phase;
  g.return_to = old_r.begin + (phase + 1) % kRingSize;
  g.topo.kappa(g.forward_from, e) = true;
  g.topo.kappa(e + kRingSize - 1, g.return_to) = true;

  const Index m = g.topo.n_c();
  LearnableParams<double>& p = g.params;
  p = params;
  p.W_cls.conservativeResize(m, Eigen::NoChange);
  p.W_cls.bottomRows(kRingSize).setZero();
  p.b_cls.conservativeResize(m);
  p.b_cls.tail(kRingSize).setZero();

  auto grow_square = [n, m](Eigen::MatrixXd& w, double fill) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Constant(m, m, fill);
    out.topLeftCorner(n, n) = w;
    w = std::move(out);
  };
  grow_square(p.W_sup, 0.0);
  for (Index i = n; i < m; ++i) p.W_sup(i, i) = 1.0;
  grow_square(p.sigma_sup, sigma_init);

  auto grow_cols = [m](Eigen::MatrixXd& w, double fill) {
    const Index old = w.cols();
    w.conservativeResize(Eigen::NoChange, m);
    w.rightCols(m - old).setConstant(fill);
  };
  grow_cols(p.W_mot, 0.0);
  grow_cols(p.sigma_mot, sigma_init);
  grow_cols(p.W_obs, 0.0);
  grow_cols(p.W_obsdev, 1.0);
  p.w_val.conservativeResize(m);
  p.w_valdev.conservativeResize(m);
  p.w_valdev.tail(kRingSize).setOnes();

  // Direct knowledge transfer.
  p.W_mot.middleCols(e, kRingSize) = params.W_mot.middleCols(src.begin, kRingSize);
  p.w_val.segment(e, kRingSize) = params.w_val.segment(src.begin, kRingSize);
  p.W_obs.middleCols(e, kRingSize) = params.W_obs.middleCols(src.begin, kRingSize);

  g.fixed = build_fixed_weights<double>(g.topo, fixed.c_params);
  return g;
}

}  // namespace ringnet
