#include "ringnet/contributions.hpp"

namespace ringnet {

Contributions contributions(const Eigen::VectorXd& b, const LearnableParams<double>& params,
                            const Topology& topo) {
  const Index n = topo.n_c();
  require_size(b.size(), n, "contributions b");
  require_size(params.n_c(), n, "contributions params");
  const double total = b.sum();
  if (!(total > 0.0)) throw UndefinedContributionError("basis activity sums to zero");
  const Eigen::VectorXd mixed = (params.W_sup.array().rowwise() * b.transpose().array()).abs().rowwise().sum();
  const double mixed_total = mixed.sum();
  if (!(mixed_total > 0.0)) throw UndefinedContributionError("premotor activity sums to zero");

  Contributions c;
  c.primary.resize(topo.num_subnets());
  c.supplementary.resize(topo.num_subnets());
  for (Index s = 0; s < topo.num_subnets(); ++s) {
    const SubnetRange& r = topo.subnets[s];
    c.primary[s] = b.segment(r.begin, r.size).sum() / total;
    c.supplementary[s] = mixed.segment(r.begin, r.size).sum() / mixed_total;
  }
  return c;
}

}  // namespace ringnet
