#include "ringnet/exploration.hpp"

namespace ringnet {

BoolMat cross_subnet_mask(const Topology& topo) {
  const Index n = topo.n_c();
  BoolMat mask = BoolMat::Constant(n, n, true);
  for (const SubnetRange& r : topo.subnets) mask.block(r.begin, r.begin, r.size, r.size).setConstant(false);
  return mask;
}

Perturbation sample_perturbation(const LearnableParams<double>& params, const Topology& topo, Rng& rng,
                                 bool supplementary) {
  const Index n = params.n_c();
  require_size(topo.n_c(), n, "sample_perturbation topology");
  Perturbation p;
  p.mot.resize(params.W_mot.rows(), n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < p.mot.rows(); ++j) p.mot(j, k) = params.sigma_mot(j, k) * standard_normal(rng);
  const BoolMat cross = cross_subnet_mask(topo);
  p.sup = Eigen::MatrixXd::Zero(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      if (cross(i, k)) {
        const double xi = params.sigma_sup(i, k) * standard_normal(rng);
        if (supplementary) p.sup(i, k) = xi;
      }
  return p;
}

LearnableParams<double> apply_perturbation(const LearnableParams<double>& params,
                                           const Perturbation& offset) {
  require_size(offset.mot.cols(), params.n_c(), "perturbation W_mot");
  require_size(offset.sup.cols(), params.n_c(), "perturbation W_sup");
  LearnableParams<double> out = params;
  out.W_mot += offset.mot;
  out.W_sup += offset.sup;
  return out;
}

SampledParams sample_parameters(const LearnableParams<double>& params, const Topology& topo, Rng& rng,
                                bool supplementary) {
  Perturbation offset = sample_perturbation(params, topo, rng, supplementary);
  return {apply_perturbation(params, offset), std::move(offset)};
}

}  // namespace ringnet
