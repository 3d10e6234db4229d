#include "ringnet/episode.hpp"

namespace ringnet {

void LearnConfig::validate() const {
  const bool positive = eta > 0 && eta_sigma > 0 && eta_v > 0 && eta_o > 0 && eta_dev_scale > 0 &&
                        sigma_min > 0 && sigma_max > 0 && H >= 1 && basis_active_eps > 0 &&
                        standardize_guard > 0 && replay_capacity >= 1;
  if (!positive) throw ConfigError("learning parameters must be positive");
  if (!(sigma_min < sigma_max)) throw ConfigError("sigma_min must be below sigma_max");
}

Eigen::MatrixXd EpisodeTrace::bases() const {
  if (states.empty()) return {};
  Eigen::MatrixXd out(length(), states.front().b.size());
  for (Index t = 0; t < length(); ++t) out.row(t) = states[t].b.transpose();
  return out;
}

Eigen::MatrixXd EpisodeTrace::feedback() const {
  if (states.empty()) return {};
  Eigen::MatrixXd out(length(), states.front().fb.size());
  for (Index t = 0; t < length(); ++t) out.row(t) = states[t].fb.transpose();
  return out;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw PreconditionError("replay capacity must be positive");
}

void ReplayBuffer::push(EpisodeTrace trace) {
  if (traces_.size() == capacity_) traces_.pop_front();
  traces_.push_back(std::move(trace));
}

Index ReplayBuffer::total_steps() const {
  Index n = 0;
  for (const auto& t : traces_) n += t.length();
  return n;
}

}  // namespace ringnet
