#pragma once

#include "ringnet/episode.hpp"
#include "ringnet/rng.hpp"
#include "ringnet/synthesis.hpp"

#include <string>
#include <vector>

namespace ringnet {

inline constexpr Index kPhases = 4;

struct Condition {
  std::string id;
  Eigen::MatrixXd targets;  // kPhases x n_actions
  Eigen::VectorXd obs_base;
  double obs_noise_std = 0.0;
  double v_max = 1.0;

  void validate() const;
};

struct ScheduleEntry {
  long begin = 0;  // half-open [begin, end)
  long end = 0;
  std::string condition_id;
};

struct Schedule {
  std::vector<ScheduleEntry> entries;

  // Ranges must be sorted, non-overlapping and cover [0, episodes).
  void validate(long episodes) const;
};

const std::string& schedule_condition(long episode, const Schedule& sched);

// Synthetic power telemetry.
struct EnvParams {
  double torque_gain = 0.1;
  double torque_offset = 0.02;
  double voltage = 12.0;
};

struct EnvStep {
  Eigen::VectorXd fb;
  double v = 0;
  Eigen::VectorXd torques;
  Eigen::VectorXd voltages;
};

// Speed reward from the distance to the target of the controller's own
// dominant phase. Keeps the previous action for the torque model.
class SurrogateEnv {
 public:
  SurrogateEnv(Index n_actions, EnvParams params = {});

  EnvStep step(const Eigen::VectorXd& action, Index phase_hint, const Condition& cond, Rng& rng);

  const Eigen::VectorXd& previous_action() const { return prev_; }
  void set_previous_action(const Eigen::VectorXd& a);

 private:
  EnvParams params_;
  Eigen::VectorXd prev_;
};

// Stateless form: torques measured against a zero previous action.
EnvStep env_step(const Eigen::VectorXd& action, Index phase_hint, const Condition& cond, Rng& rng,
                 const EnvParams& params = {});

struct OracleResult {
  Eigen::MatrixXd W_mot;
  double mean_return = 0;  // per-episode mean of R, averaged over the evaluation episodes
};

struct OracleOptions {
  Index subnet = 0;
  Index warmup = 100;
  Index fit_steps = 400;
  Index episodes = 8;
  Index episode_length = 30;
  Index H = 14;
};

// Least-squares W_mot columns for one subnetwork so that W_mot pm tracks the
// target of the dominant phase on an unperturbed rollout, then a direct
// rollout with those weights for the achievable return.
OracleResult oracle_weights(const Condition& cond, const Topology& topo, const FixedWeights<double>& fixed,
                            const OracleOptions& opts = {});

}  // namespace ringnet
