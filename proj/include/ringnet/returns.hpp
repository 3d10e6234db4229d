#pragma once

#include "ringnet/episode.hpp"

namespace ringnet {

// out[t] = sum of x over [t, min(t + H, T - 1)]. Works row-wise on matrices.
Eigen::VectorXd horizon_sum(const Eigen::VectorXd& x, Index H);
Eigen::MatrixXd horizon_sum_rows(const Eigen::MatrixXd& x, Index H);

// Speed mode: horizon sum of rewards. Cot mode adds the window minimum.
Eigen::VectorXd assemble_returns(const Eigen::VectorXd& rewards, Index H, RewardMode mode);

// Inverse cost of transport: m g v / sum(k * torque * voltage).
double cot_reward(double v, const Eigen::VectorXd& torques, const Eigen::VectorXd& voltages,
                  const Eigen::VectorXd& k, double mass = 4.7, double gravity = 9.81);

}  // namespace ringnet
