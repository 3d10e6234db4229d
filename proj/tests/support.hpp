// Shared fixtures for the unit tests and the acceptance binary.
#pragma once

#include "ringnet/config.hpp"
#include "ringnet/experiment.hpp"

#include <string>

namespace ringnet::testing {

// Per-phase targets for a 4-action surrogate, drawn once and pinned here.
inline Eigen::MatrixXd base_targets() {
  Eigen::MatrixXd t(4, 4);
  t << 0.2252, 0.715, 0.4962, -0.4946,
       -0.3597, 0.6724, -0.8905, 0.5782,
       0.5347, -0.0577, -0.3545, -0.3988,
       -0.4412, -0.0989, 0.0082, 0.0963;
  return t;
}

// 21 channels: pitch, 18 motor flags, hue mean and std.
inline Eigen::VectorXd terrain_obs(double pitch) {
  Eigen::VectorXd o = Eigen::VectorXd::Zero(21);
  o[0] = pitch;
  o[19] = 0.3;
  o[20] = 0.1;
  return o;
}

inline Condition terrain(const std::string& id, const Eigen::MatrixXd& targets, double pitch,
                         double noise = 0.002) {
  Condition c;
  c.id = id;
  c.targets = targets;
  c.obs_base = terrain_obs(pitch);
  c.obs_noise_std = noise;
  return c;
}

struct Phase {
  Condition cond;
  long episodes;
};

// Conditions in order, each for a run of episodes. Repeated ids reuse the
// first definition.
inline ExperimentConfig scripted(const std::vector<Phase>& phases, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  long at = 0;
  for (const Phase& p : phases) {
    bool known = false;
    for (const auto& c : cfg.conditions) known = known || c.id == p.cond.id;
    if (!known) cfg.conditions.push_back(p.cond);
    cfg.schedule.entries.push_back({at, at + p.episodes, p.cond.id});
    at += p.episodes;
  }
  cfg.episodes = at;
  return cfg;
}

}  // namespace ringnet::testing
