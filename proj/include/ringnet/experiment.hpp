#pragma once

#include "ringnet/config.hpp"
#include "ringnet/contributions.hpp"
#include "ringnet/neurogenesis.hpp"
#include "ringnet/snapshot.hpp"

#include <filesystem>
#include <optional>

namespace ringnet {

struct EpisodeReport {
  MetricsRow row;
  Index preferred_subnetwork = 0;
  NoveltyEvidence novelty;
  bool evaluated = false;  // false while a switch grace period runs
  bool switched = false;
  EpisodeTrace trace;
};

// The episode loop: rollout, replay, fits and updates, novelty and growth.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);
  Experiment(ExperimentConfig cfg, RunState resume);

  EpisodeReport run_episode();
  void run_to_end();
  bool done() const { return s_.episode >= cfg_.episodes; }

  const ExperimentConfig& config() const { return cfg_; }
  const RunState& state() const { return s_; }
  const Topology& topology() const { return s_.topo; }
  const FixedWeights<double>& fixed() const { return fixed_; }
  const LearnableParams<double>& params() const { return s_.params; }
  long episode() const { return s_.episode; }

  // Fixture hooks: replace the learned parameters, or re-seed the ring state.
  void set_params(const LearnableParams<double>& p);
  void reset_state(Index subnet);

  RunState snapshot() const;

 private:
  void grow(const EpisodeTrace& trace, const NoveltyEvidence& ev, Index active, double scale);
  void log(const std::string& line) { s_.events.push_back("episode " + std::to_string(s_.episode) + " " + line); }

  ExperimentConfig cfg_;
  RunState s_;
  FixedWeights<double> fixed_;
  Rng rng_;
  SurrogateEnv env_;
  GrowthGuard guard_;
};

// Subnetwork with the largest time-summed basis activity.
Index active_subnet(const EpisodeTrace& trace, const Topology& topo);
// Subnetwork with the largest time-mean I' (classifier output).
Index classifier_subnet(const EpisodeTrace& trace, const Topology& topo);

// Runs a whole experiment and writes metrics.csv, events.log, snapshot.json
// and behavior.dot into out_dir. Periodic snapshots go to out_dir/snapshots.
void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                    std::optional<RunState> resume = std::nullopt);

}  // namespace ringnet
