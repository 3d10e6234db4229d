#pragma once

#include "ringnet/envsim.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ringnet {

struct AblationFlags {
  bool disable_neurogenesis = false;
  bool disable_supplementary = false;
  bool naive_transfer = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  long episodes = 200;
  Index timesteps_per_episode = 30;
  RewardMode reward_mode = RewardMode::kSpeed;
  LearnConfig learn;
  BoundaryParams boundary;
  double tau = 0.08;
  Index initial_subnetworks = 1;
  std::optional<long> growth_cap;  // unlimited when empty
  long grace_episodes = 3;
  long snapshot_every = 0;  // 0: final snapshot only
  std::vector<Condition> conditions;
  Schedule schedule;
  EnvParams env;
  double motor_k = 1.0;  // per-motor power coefficient for the cot reward
  double mass = 4.7;
  double gravity = 9.81;
  std::string output_dir;
  AblationFlags ablation;

  Index n_fb() const;
  Index n_actions() const;
  const Condition& condition(const std::string& id) const;
  void validate() const;
};

// JSON text. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_text(const ExperimentConfig& cfg);

}  // namespace ringnet
