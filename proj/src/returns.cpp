#include "ringnet/returns.hpp"

#include <algorithm>

namespace ringnet {

Eigen::MatrixXd horizon_sum_rows(const Eigen::MatrixXd& x, Index H) {
  if (H < 1) throw PreconditionError("horizon must be at least 1");
  const Index T = x.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(T, x.cols());
  for (Index t = 0; t < T; ++t) {
    const Index last = std::min(t + H, T - 1);
    out.row(t) = x.middleRows(t, last - t + 1).colwise().sum();
  }
  return out;
}

Eigen::VectorXd horizon_sum(const Eigen::VectorXd& x, Index H) { return horizon_sum_rows(x, H).col(0); }

Eigen::VectorXd assemble_returns(const Eigen::VectorXd& rewards, Index H, RewardMode mode) {
  if (rewards.size() == 0) throw PreconditionError("no rewards to assemble");
  if (H < 1) throw PreconditionError("horizon must be at least 1");
  const Index T = rewards.size();
  Eigen::VectorXd out(T);
  for (Index t = 0; t < T; ++t) {
    const auto window = rewards.segment(t, std::min(t + H, T - 1) - t + 1);
    out[t] = window.sum();
    if (mode == RewardMode::kCot) out[t] += window.minCoeff();
  }
  return out;
}

double cot_reward(double v, const Eigen::VectorXd& torques, const Eigen::VectorXd& voltages,
                  const Eigen::VectorXd& k, double mass, double gravity) {
  require_size(voltages.size(), torques.size(), "cot_reward voltages");
  require_size(k.size(), torques.size(), "cot_reward k");
  const double power = (k.array() * torques.array() * voltages.array()).sum();
  if (!(power > 0.0)) throw PreconditionError("nonpositive power in cost of transport");
  return mass * gravity * v / power;
}

}  // namespace ringnet
