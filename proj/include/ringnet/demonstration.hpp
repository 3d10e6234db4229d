#pragma once

#include "ringnet/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace ringnet {

struct Demonstration {
  Eigen::MatrixXd samples;  // T_demo x n_actions
  double sample_period = 0.05;

  Index length() const { return samples.rows(); }
  Index n_actions() const { return samples.cols(); }
};

// One row per sample, one column per joint. A non-numeric first row is
// taken as a header.
Demonstration load_demonstration_csv(const std::filesystem::path& path);

// A ring built for demonstration programming: one subnetwork of any size,
// a single dummy feedback channel, identity premotor mixing.
struct DemoRing {
  Topology topo;
  FixedWeights<double> fixed;
  LearnableParams<double> params;
};

DemoRing make_demo_ring(Index size, Index n_actions, double tau = 0.08, const BoundaryParams& bp = {});

// Rollouts start on the ring's steady cycle, at the step where the first
// neuron takes over again after one full revolution.
NetworkState<double> steady_start(const DemoRing& ring);

// Motor trajectory (rows = steps) and the dominant neuron per step.
struct Rollout {
  Eigen::MatrixXd m;
  Eigen::MatrixXd b;
  Eigen::MatrixXd c;
  std::vector<Index> dominant;
};
Rollout roll(const DemoRing& ring, Index steps);

struct WindowFit {
  Eigen::MatrixXd W_mot;
  double error = 0;  // DTW between generated and demonstrated
  Eigen::MatrixXd generated;
};

// Least squares W_mot so that the ring's output tracks the segment. Columns of
// neurons that never activate in the window stay zero.
WindowFit fit_window(const Eigen::MatrixXd& segment, DemoRing& ring);

struct DemoOptions {
  Index window = 40;
  Index max_iter = 50;
  Index ring_size = 4;
  double tol = 1.0;
  std::uint64_t seed = 0;
  double tau = 0.08;
  BoundaryParams boundary;
  double flip_prob = 0.1;
  double jitter = 0.05;
};

struct WindowRecord {
  Index t = 0;
  bool skipped = false;
  double replay_error = 0;  // infinity when nothing could be replayed yet
  double fit_error = 0;
  Index ring_size = 0;      // size after structure optimization
  Index appended = 0;
};

struct DemoResult {
  DemoRing ring;
  std::vector<WindowRecord> windows;
  Eigen::MatrixXd replay;
  double final_error = 0;
};

DemoResult program_from_demonstration(const Demonstration& demo, const DemoOptions& opts);

// Ring order of a binary transition matrix, or nothing when it is not a
// single simple cycle of length >= 3 over the neurons it touches.
std::optional<std::vector<Index>> ring_order(const BoolMat& t);

}  // namespace ringnet
