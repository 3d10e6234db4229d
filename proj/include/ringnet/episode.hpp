#pragma once

#include "ringnet/net_core.hpp"

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace ringnet {

enum class RewardMode { kSpeed, kCot };

enum class UpdateScaling {
  kNatural,  // offsets scaled by sigma^2 and normalized by the summed gradient weights
  kLiteral   // (w' - w) / sigma^2 and the matching sigma rule, unnormalized
};

struct LearnConfig {
  double eta = 0.5;
  double eta_sigma = 0.05;
  double eta_v = 0.2;
  double eta_o = 0.5;
  double eta_dev_scale = 0.1;
  double sigma_min = 0.01;
  double sigma_max = 0.05;
  Index H = 14;
  double basis_active_eps = 1e-2;
  double standardize_guard = 1e-8;
  std::size_t replay_capacity = 8;
  UpdateScaling scaling = UpdateScaling::kNatural;

  void validate() const;
};

// Offsets added to the learnable parameters for one whole episode.
struct Perturbation {
  Eigen::MatrixXd mot;  // n_actions x n_c
  Eigen::MatrixXd sup;  // n_c x n_c, zero on the diagonal and inside subnetworks
};

struct EpisodeTrace {
  std::vector<NetworkState<double>> states;
  Perturbation perturbation;
  Eigen::VectorXd rewards;
  Eigen::VectorXd returns;
  std::string condition_id;

  Index length() const { return static_cast<Index>(states.size()); }
  // Rows are timesteps.
  Eigen::MatrixXd bases() const;
  Eigen::MatrixXd feedback() const;
};

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 8);

  void push(EpisodeTrace trace);
  void clear() { traces_.clear(); }

  std::size_t size() const { return traces_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return traces_.empty(); }
  Index total_steps() const;

  const EpisodeTrace& operator[](std::size_t i) const { return traces_[i]; }
  const EpisodeTrace& back() const { return traces_.back(); }
  auto begin() const { return traces_.begin(); }
  auto end() const { return traces_.end(); }

 private:
  std::size_t capacity_;
  std::deque<EpisodeTrace> traces_;
};

}  // namespace ringnet
