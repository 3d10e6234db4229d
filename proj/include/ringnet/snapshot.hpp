#pragma once

#include "ringnet/episode.hpp"
#include "ringnet/metrics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ringnet {

inline constexpr int kSnapshotVersion = 1;

// Everything needed to continue a run exactly where it stopped.
struct RunState {
  long episode = 0;  // next episode to run
  Topology topo;
  CParams c_params;
  LearnableParams<double> params;
  NetworkState<double> state;
  Eigen::VectorXd last_fb;
  Eigen::VectorXd prev_action;
  ReplayBuffer replay;
  std::string rng;
  long grace = 0;
  Index last_active = -1;
  Index last_preferred = -1;
  long last_growth_episode = -1;
  std::vector<MetricsRow> metrics;
  std::vector<std::string> events;
};

std::string snapshot_to_text(const RunState& s);
// Throws CorruptFileError or VersionMismatchError.
RunState snapshot_from_text(const std::string& text);

void save_snapshot(const std::filesystem::path& path, const RunState& s);
RunState load_snapshot(const std::filesystem::path& path);

}  // namespace ringnet
