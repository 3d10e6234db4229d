#pragma once

#include "ringnet/episode.hpp"

#include <vector>

namespace ringnet {

// One vector per trace in the buffer, same order.
using Advantages = std::vector<Eigen::VectorXd>;

// raw = R - horizon sum of w_val . b, standardized over every (episode, t).
Advantages compute_advantages(const ReplayBuffer& replay, const Eigen::VectorXd& w_val, Index H,
                              double guard = 1e-8);

struct ParamDelta {
  Eigen::MatrixXd weights;
  Eigen::MatrixXd sigma;
  BoolMat mask;  // entries allowed to change
};

// |dm_j / dW_mot(j,k)| = |pm_k|, for one timestep.
Eigen::MatrixXd motor_gradient_weights(const Eigen::VectorXd& pm, Index n_actions);

// sum_j |dm_j / dW_sup(i,k)| = sum_j |W_mot(j,i)| b_k, for one timestep.
Eigen::MatrixXd supplementary_gradient_weights(const Eigen::MatrixXd& W_mot, const Eigen::VectorXd& b);

// Columns whose basis exceeded basis_active_eps anywhere in the buffer.
Eigen::Array<bool, Eigen::Dynamic, 1> active_bases(const ReplayBuffer& replay, double eps);

ParamDelta update_primary(const LearnableParams<double>& params, const ReplayBuffer& replay,
                          const Advantages& advantages, const LearnConfig& cfg);

ParamDelta update_supplementary(const LearnableParams<double>& params, const Topology& topo,
                                const ReplayBuffer& replay, const Advantages& advantages,
                                const LearnConfig& cfg);

// Adds masked weight deltas, then sigma deltas clamped to [sigma_min, sigma_max].
// Entries outside the mask are not touched at all.
void apply_primary(LearnableParams<double>& params, const ParamDelta& delta, const LearnConfig& cfg);
void apply_supplementary(LearnableParams<double>& params, const ParamDelta& delta, const LearnConfig& cfg);

}  // namespace ringnet
