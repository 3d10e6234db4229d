#include "ringnet/policy_gradient.hpp"

#include "ringnet/exploration.hpp"
#include "ringnet/returns.hpp"

#include <algorithm>
#include <cmath>

namespace ringnet {

Advantages compute_advantages(const ReplayBuffer& replay, const Eigen::VectorXd& w_val, Index H,
                              double guard) {
  Advantages raw;
  raw.reserve(replay.size());
  double sum = 0;
  Index count = 0;
  for (const EpisodeTrace& tr : replay) {
    require_size(tr.returns.size(), tr.length(), "trace returns");
    const Eigen::VectorXd v = tr.bases() * w_val;
    raw.push_back(tr.returns - horizon_sum(v, H));
    sum += raw.back().sum();
    count += raw.back().size();
  }
  if (count == 0) return raw;
  const double mean = sum / double(count);
  double ss = 0;
  for (const auto& r : raw) ss += (r.array() - mean).square().sum();
  const double sd = std::sqrt(ss / double(count));
  for (auto& r : raw) {
    if (sd < guard)
      r.setZero();
    else
      r = (r.array() - mean) / (sd + guard);
  }
  return raw;
}

Eigen::MatrixXd motor_gradient_weights(const Eigen::VectorXd& pm, Index n_actions) {
  return pm.cwiseAbs().transpose().replicate(n_actions, 1);
}

Eigen::MatrixXd supplementary_gradient_weights(const Eigen::MatrixXd& W_mot, const Eigen::VectorXd& b) {
  return W_mot.cwiseAbs().colwise().sum().transpose() * b.cwiseAbs().transpose();
}

Eigen::Array<bool, Eigen::Dynamic, 1> active_bases(const ReplayBuffer& replay, double eps) {
  if (replay.empty()) return {};
  const Index n = replay[0].states.front().b.size();
  Eigen::VectorXd peak = Eigen::VectorXd::Zero(n);
  for (const EpisodeTrace& tr : replay)
    for (const auto& s : tr.states) peak = peak.cwiseMax(s.b);
  return peak.array() > eps;
}

namespace {

void check_replay(const ReplayBuffer& replay, const Advantages& adv, Index n_c) {
  if (replay.empty()) throw PreconditionError("replay buffer is empty");
  require_size(Index(adv.size()), Index(replay.size()), "advantages");
  for (std::size_t e = 0; e < replay.size(); ++e) {
    require_size(adv[e].size(), replay[e].length(), "advantage trace");
    require_size(replay[e].perturbation.mot.cols(), n_c, "trace perturbation");
    require_size(replay[e].states.front().b.size(), n_c, "trace bases");
  }
}

// num/den accumulate sum g * offset * A and sum g over every (episode, t);
// nums accumulates the sigma numerator.
struct Accum {
  Eigen::MatrixXd num, nums, den;
  Accum(Index r, Index c) : num(Eigen::MatrixXd::Zero(r, c)), nums(num), den(num) {}

  void add(const Eigen::MatrixXd& g_adv, const Eigen::MatrixXd& g, const Eigen::MatrixXd& xi,
           const Eigen::MatrixXd& sigma, UpdateScaling scaling) {
    const Eigen::ArrayXXd s = sigma.array();
    const Eigen::ArrayXXd x = xi.array();
    if (scaling == UpdateScaling::kNatural) {
      num.array() += x * g_adv.array();
      nums.array() += (x.square() - s.square()) / (2.0 * s) * g_adv.array();
      den += g;
    } else {
      num.array() += x / s.square() * g_adv.array();
      nums.array() += (x.square() - s.square()) / s.cube() * g_adv.array();
    }
  }

  ParamDelta finish(const LearnConfig& cfg, BoolMat mask) const {
    ParamDelta d;
    if (cfg.scaling == UpdateScaling::kNatural) {
      const Eigen::ArrayXXd safe = (den.array() > 0.0).select(den.array(), 1.0);
      d.weights = (den.array() > 0.0).select(cfg.eta * num.array() / safe, 0.0);
      d.sigma = (den.array() > 0.0).select(cfg.eta_sigma * nums.array() / safe, 0.0);
    } else {
      d.weights = cfg.eta * num;
      d.sigma = cfg.eta_sigma * nums;
    }
    for (Index k = 0; k < mask.cols(); ++k)
      for (Index i = 0; i < mask.rows(); ++i)
        if (!mask(i, k)) d.weights(i, k) = d.sigma(i, k) = 0.0;
    d.mask = std::move(mask);
    return d;
  }
};

}  // namespace

ParamDelta update_primary(const LearnableParams<double>& params, const ReplayBuffer& replay,
                          const Advantages& advantages, const LearnConfig& cfg) {
  const Index n = params.n_c(), na = params.n_actions();
  check_replay(replay, advantages, n);
  Accum acc(na, n);
  for (std::size_t e = 0; e < replay.size(); ++e) {
    const EpisodeTrace& tr = replay[e];
    Eigen::VectorXd g_adv = Eigen::VectorXd::Zero(n), g = Eigen::VectorXd::Zero(n);
    for (Index t = 0; t < tr.length(); ++t) {
      const Eigen::VectorXd w = tr.states[t].pm.cwiseAbs();
      g_adv += w * advantages[e][t];
      g += w;
    }
    acc.add(g_adv.transpose().replicate(na, 1), g.transpose().replicate(na, 1), tr.perturbation.mot,
            params.sigma_mot, cfg.scaling);
  }
  const auto active = active_bases(replay, cfg.basis_active_eps);
  BoolMat mask(na, n);
  for (Index k = 0; k < n; ++k) mask.col(k).setConstant(active[k]);
  return acc.finish(cfg, std::move(mask));
}

ParamDelta update_supplementary(const LearnableParams<double>& params, const Topology& topo,
                                const ReplayBuffer& replay, const Advantages& advantages,
                                const LearnConfig& cfg) {
  const Index n = params.n_c();
  check_replay(replay, advantages, n);
  require_size(topo.n_c(), n, "update_supplementary topology");
  Accum acc(n, n);
  for (std::size_t e = 0; e < replay.size(); ++e) {
    const EpisodeTrace& tr = replay[e];
    const Eigen::VectorXd s = (params.W_mot + tr.perturbation.mot).cwiseAbs().colwise().sum().transpose();
    Eigen::VectorXd b_adv = Eigen::VectorXd::Zero(n), b_sum = Eigen::VectorXd::Zero(n);
    for (Index t = 0; t < tr.length(); ++t) {
      const Eigen::VectorXd b = tr.states[t].b.cwiseAbs();
      b_adv += b * advantages[e][t];
      b_sum += b;
    }
    acc.add(s * b_adv.transpose(), s * b_sum.transpose(), tr.perturbation.sup, params.sigma_sup,
            cfg.scaling);
  }
  return acc.finish(cfg, cross_subnet_mask(topo));
}

namespace {

void apply_masked(Eigen::MatrixXd& w, Eigen::MatrixXd& sigma, const ParamDelta& d, const LearnConfig& cfg) {
  require_size(d.weights.rows(), w.rows(), "delta rows");
  require_size(d.weights.cols(), w.cols(), "delta cols");
  for (Index k = 0; k < w.cols(); ++k)
    for (Index i = 0; i < w.rows(); ++i) {
      if (!d.mask(i, k)) continue;
      w(i, k) += d.weights(i, k);
      sigma(i, k) = std::clamp(sigma(i, k) + d.sigma(i, k), cfg.sigma_min, cfg.sigma_max);
    }
}

}  // namespace

void apply_primary(LearnableParams<double>& params, const ParamDelta& delta, const LearnConfig& cfg) {
  apply_masked(params.W_mot, params.sigma_mot, delta, cfg);
}

void apply_supplementary(LearnableParams<double>& params, const ParamDelta& delta, const LearnConfig& cfg) {
  ParamDelta d = delta;
  for (Index i = 0; i < d.mask.rows(); ++i) d.mask(i, i) = false;
  apply_masked(params.W_sup, params.sigma_sup, d, cfg);
}

}  // namespace ringnet
