#include "ringnet/cli.hpp"

#include "ringnet/demonstration.hpp"
#include "ringnet/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>

namespace ringnet {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) throw Error(std::string(what) + " not found: " + path);
}

std::string trajectory_csv(const Eigen::MatrixXd& m) {
  std::string s;
  for (Index c = 0; c < m.cols(); ++c) s += (c ? ",m" : "m") + std::to_string(c);
  s += "\n";
  char buf[40];
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.10g", m(r, c));
      if (c) s += ",";
      s += buf;
    }
    s += "\n";
  }
  return s;
}

void run_demo(const std::string& input, Index window, Index max_iter, Index ring_size, double tol,
              std::uint64_t seed, const std::filesystem::path& out_dir, std::ostream& out) {
  require_file(input, "demonstration");
  const Demonstration demo = load_demonstration_csv(input);
  DemoOptions o;
  o.window = window;
  o.max_iter = max_iter;
  o.ring_size = ring_size;
  o.tol = tol;
  o.seed = seed;
  const DemoResult res = program_from_demonstration(demo, o);

  std::filesystem::create_directories(out_dir);
  RunState s;
  s.topo = res.ring.topo;
  s.c_params = res.ring.fixed.c_params;
  s.params = res.ring.params;
  s.state = steady_start(res.ring);
  s.last_fb = Eigen::VectorXd::Zero(s.topo.n_fb);
  s.prev_action = Eigen::VectorXd::Zero(s.topo.n_actions);
  s.rng = rng_state(Rng(seed));
  save_snapshot(out_dir / "network.json", s);
  write_file(out_dir / "replay.csv", trajectory_csv(res.replay));
  write_file(out_dir / "behavior.dot", export_behavior_graph(res.ring.topo, res.ring.params));
  std::string log;
  char buf[200];
  for (const auto& w : res.windows) {
    std::snprintf(buf, sizeof buf, "t=%ld skipped=%d replay_error=%.6g fit_error=%.6g ring_size=%ld appended=%ld\n",
                  static_cast<long>(w.t), w.skipped ? 1 : 0, w.replay_error, w.fit_error,
                  static_cast<long>(w.ring_size), static_cast<long>(w.appended));
    log += buf;
  }
  std::snprintf(buf, sizeof buf, "neurons=%ld final_error=%.6g\n", static_cast<long>(res.ring.topo.n_c()),
                res.final_error);
  log += buf;
  write_file(out_dir / "windows.log", log);
  out << log;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ring-structured continual locomotion controller"};
  app.require_subcommand(1);

  std::string config, out_dir, resume;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--resume", resume, "Continue from a snapshot file");

  std::string snapshot, graph_out;
  auto* graph = app.add_subcommand("export-graph", "Write the behavior graph of a snapshot as DOT");
  graph->add_option("--snapshot", snapshot, "Snapshot file")->required();
  graph->add_option("--out", graph_out, "Output DOT file")->required();

  std::string input, demo_out;
  Index window = 0, max_iter = 0, ring_size = 0;
  double tol = 0;
  std::uint64_t demo_seed = 0;
  auto* demo = app.add_subcommand("demo", "Program a ring network from a demonstration");
  demo->add_option("--input", input, "Demonstration CSV")->required();
  demo->add_option("--window", window, "Window length in samples")->required();
  demo->add_option("--max-iter", max_iter, "Structure optimization iterations")->required();
  demo->add_option("--ring-size", ring_size, "Initial ring size")->required();
  demo->add_option("--tol", tol, "DTW error tolerance")->required();
  demo->add_option("--out", demo_out, "Output directory")->required();
  demo->add_option("--seed", demo_seed, "Seed for structure perturbations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*run) {
      require_file(config, "config file");
      ExperimentConfig cfg = load_config(config);
      if (*seed_opt) cfg.seed = seed;
      std::optional<RunState> state;
      if (!resume.empty()) {
        require_file(resume, "snapshot");
        state = load_snapshot(resume);
      }
      run_experiment(cfg, out_dir, std::move(state));
    } else if (*graph) {
      require_file(snapshot, "snapshot");
      const RunState s = load_snapshot(snapshot);
      write_file(graph_out, export_behavior_graph(s.topo, s.params));
    } else if (*demo) {
      run_demo(input, window, max_iter, ring_size, tol, demo_seed, demo_out, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ringnet
