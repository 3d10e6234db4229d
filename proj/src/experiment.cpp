#include "ringnet/experiment.hpp"

#include "ringnet/exploration.hpp"
#include "ringnet/policy_gradient.hpp"
#include "ringnet/predictors.hpp"
#include "ringnet/returns.hpp"

#include <cstdio>
#include <limits>
#include <fstream>

namespace ringnet {

namespace {

Index argmax_subnet(const Eigen::VectorXd& x, const Topology& topo, bool mean) {
  Index best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (Index s = 0; s < topo.num_subnets(); ++s) {
    const SubnetRange& r = topo.subnets[s];
    const double v = mean ? x.segment(r.begin, r.size).mean() : x.segment(r.begin, r.size).sum();
    if (v > best_v) {
      best_v = v;
      best = s;
    }
  }
  return best;
}


}  // namespace

Index active_subnet(const EpisodeTrace& trace, const Topology& topo) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(topo.n_c());
  for (const auto& s : trace.states) sum += s.b;
  return argmax_subnet(sum, topo, false);
}

Index classifier_subnet(const EpisodeTrace& trace, const Topology& topo) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(topo.n_c());
  for (const auto& s : trace.states) sum += s.ip1;
  return argmax_subnet(sum, topo, true);
}

Experiment::Experiment(ExperimentConfig cfg)
    : cfg_(std::move(cfg)), rng_(cfg_.seed), env_(cfg_.n_actions(), cfg_.env) {
  cfg_.validate();
  s_.topo = make_chain_topology(cfg_.initial_subnetworks, cfg_.n_fb(), cfg_.n_actions(), cfg_.tau);
  s_.c_params = solve_c_params(cfg_.boundary);
  fixed_ = build_fixed_weights<double>(s_.topo, s_.c_params);
  s_.params = make_learnable_params<double>(s_.topo, cfg_.learn.sigma_max);
  s_.state = initial_state(s_.topo, s_.params, 0);
  s_.last_fb = cfg_.condition(schedule_condition(0, cfg_.schedule)).obs_base;
  s_.prev_action = Eigen::VectorXd::Zero(cfg_.n_actions());
  s_.replay = ReplayBuffer(cfg_.learn.replay_capacity);
}

Experiment::Experiment(ExperimentConfig cfg, RunState resume)
    : cfg_(std::move(cfg)), s_(std::move(resume)), env_(cfg_.n_actions(), cfg_.env) {
  cfg_.validate();
  validate(s_.topo);
  if (s_.topo.n_fb != cfg_.n_fb() || s_.topo.n_actions != cfg_.n_actions())
    throw ConfigError("snapshot dimensions do not match the config");
  fixed_ = build_fixed_weights<double>(s_.topo, s_.c_params);
  check_dimensions(s_.state, s_.topo, fixed_, s_.params);
  set_rng_state(rng_, s_.rng);
  env_.set_previous_action(s_.prev_action);
  guard_.restore(s_.last_growth_episode);
}

void Experiment::set_params(const LearnableParams<double>& p) {
  require_size(p.n_c(), s_.topo.n_c(), "set_params");
  s_.params = p;
}

void Experiment::reset_state(Index subnet) { s_.state = initial_state(s_.topo, s_.params, subnet); }

RunState Experiment::snapshot() const {
  RunState out = s_;
  out.rng = rng_state(rng_);
  out.prev_action = env_.previous_action();
  out.last_growth_episode = guard_.last_episode();
  return out;
}

EpisodeReport Experiment::run_episode() {
  if (done()) throw PreconditionError("experiment already finished");
  const LearnConfig& lc = cfg_.learn;
  const std::string& cid = schedule_condition(s_.episode, cfg_.schedule);
  const Condition& cond = cfg_.condition(cid);
  const bool supplementary = !cfg_.ablation.disable_supplementary;
  const Index T = cfg_.timesteps_per_episode;

  // Rollout with one perturbation held for the whole episode.
  SampledParams sp = sample_parameters(s_.params, s_.topo, rng_, supplementary);
  EpisodeReport rep;
  EpisodeTrace& tr = rep.trace;
  tr.condition_id = cid;
  tr.perturbation = std::move(sp.offset);
  tr.rewards.resize(T);
  tr.states.reserve(T);
  const Eigen::VectorXd k = Eigen::VectorXd::Constant(cfg_.n_actions(), cfg_.motor_k);
  for (Index t = 0; t < T; ++t) {
    s_.state = network_forward(s_.state, s_.last_fb, s_.topo, fixed_, sp.params);
    const EnvStep step = env_.step(s_.state.m, dominant(s_.state.b), cond, rng_);
    tr.rewards[t] = cfg_.reward_mode == RewardMode::kSpeed
                        ? step.v
                        : cot_reward(step.v, step.torques, step.voltages, k, cfg_.mass, cfg_.gravity);
    tr.states.push_back(s_.state);
    s_.last_fb = step.fb;
  }
  tr.returns = assemble_returns(tr.rewards, lc.H, cfg_.reward_mode);

  // Learning, in the fixed order.
  s_.replay.push(tr);
  fit_predictors(s_.params, s_.replay, lc);
  const double scale = basis_sum_scale(s_.replay);
  fit_classifier(s_.params, s_.topo, lc.eta_o, scale);
  const Advantages adv = compute_advantages(s_.replay, s_.params.w_val, lc.H, lc.standardize_guard);
  const ParamDelta d_primary = update_primary(s_.params, s_.replay, adv, lc);
  if (supplementary) {
    const ParamDelta d_sup = update_supplementary(s_.params, s_.topo, s_.replay, adv, lc);
    apply_primary(s_.params, d_primary, lc);
    apply_supplementary(s_.params, d_sup, lc);
  } else {
    apply_primary(s_.params, d_primary, lc);
  }

  // Switch bookkeeping and the grace period.
  const Index active = active_subnet(tr, s_.topo);
  rep.preferred_subnetwork = classifier_subnet(tr, s_.topo);
  rep.switched = active != s_.last_active || rep.preferred_subnetwork != s_.last_preferred;
  if (rep.switched) {
    s_.grace = cfg_.grace_episodes;
    log("switch active=" + std::to_string(active) + " preferred=" + std::to_string(rep.preferred_subnetwork));
  } else if (s_.grace > 0) {
    --s_.grace;
  } else {
    rep.evaluated = true;
  }
  s_.last_active = active;
  s_.last_preferred = rep.preferred_subnetwork;

  // Metrics on the structure the episode ran with.
  MetricsRow& row = rep.row;
  row.episode = s_.episode;
  row.condition_id = cid;
  row.mean_return = tr.returns.mean();
  row.min_return = tr.returns.minCoeff();
  Eigen::VectorXd v(T), vdev(T), b_mean = Eigen::VectorXd::Zero(s_.topo.n_c());
  for (Index t = 0; t < T; ++t) {
    v[t] = tr.states[t].v;
    vdev[t] = tr.states[t].vdev;
    b_mean += tr.states[t].b / double(T);
  }
  const Eigen::VectorXd sv = horizon_sum(v, lc.H);
  row.value_pred = sv.mean();
  row.value_band_lo = (sv - vdev).mean();
  row.active_subnetwork = active;
  try {
    const Contributions c = contributions(b_mean, s_.params, s_.topo);
    row.primary.assign(c.primary.data(), c.primary.data() + c.primary.size());
    row.supplementary.assign(c.supplementary.data(), c.supplementary.data() + c.supplementary.size());
  } catch (const UndefinedContributionError&) {
  }

  rep.novelty = detect_novelty(tr, lc.H);
  if (rep.novelty.co_occurrence) {
    const bool capped = cfg_.growth_cap && s_.topo.num_subnets() - cfg_.initial_subnetworks >= *cfg_.growth_cap;
    if (!rep.evaluated)
      log("novelty ignored during grace period t=" + std::to_string(rep.novelty.co_t));
    else if (cfg_.ablation.disable_neurogenesis)
      log("novelty ignored, neurogenesis disabled t=" + std::to_string(rep.novelty.co_t));
    else if (capped)
      log("novelty ignored, growth cap reached t=" + std::to_string(rep.novelty.co_t));
    else {
      grow(tr, rep.novelty, active, scale);
      row.grew = true;
    }
  }
  row.subnetwork_count = s_.topo.num_subnets();
  s_.metrics.push_back(row);
  ++s_.episode;
  return rep;
}

void Experiment::grow(const EpisodeTrace& tr, const NoveltyEvidence& ev, Index active, double scale) {
  const SubnetRange old_r = s_.topo.subnets[active];
  Index phase = 0;
  tr.states[ev.co_t].c.segment(old_r.begin, old_r.size).maxCoeff(&phase);
  const Index source = cfg_.ablation.naive_transfer ? 0 : active;
  GrowthResult g = grow_subnetwork(s_.topo, fixed_, s_.params, active, phase, s_.episode, guard_, source,
                                   cfg_.learn.sigma_max);
  const SubnetRange fresh = g.topo.subnets[g.new_subnet];

  // Shift the copied observation templates onto what the breach episode saw.
  Eigen::VectorXd fb_mean = Eigen::VectorXd::Zero(g.topo.n_fb), o_mean = fb_mean;
  for (const auto& s : tr.states) {
    fb_mean += s.fb;
    o_mean += s.o;
  }
  const Eigen::VectorXd shift = (fb_mean - o_mean) / (double(tr.length()) * scale);
  g.params.W_obs.middleCols(fresh.begin, fresh.size).colwise() += shift;

  s_.topo = std::move(g.topo);
  fixed_ = std::move(g.fixed);
  s_.params = std::move(g.params);

  // Warm start so the new templates route to the new subnetwork.
  Index epochs = 0;
  while (epochs < 200) {
    fit_classifier(s_.params, s_.topo, cfg_.learn.eta_o, scale);
    ++epochs;
    if (templates_routed(s_.params, s_.topo, classifier_templates(s_.params, s_.topo, scale))) break;
  }

  s_.state = initial_state(s_.topo, s_.params, g.new_subnet);
  s_.replay.clear();
  s_.grace = cfg_.grace_episodes;
  s_.last_active = s_.last_preferred = g.new_subnet;
  log("growth new=" + std::to_string(g.new_subnet) + " from=" + std::to_string(active) +
      " phase=" + std::to_string(phase) + " source=" + std::to_string(source) + " t=" + std::to_string(ev.co_t) +
      " classifier_epochs=" + std::to_string(epochs));
}

void Experiment::run_to_end() {
  while (!done()) run_episode();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

void write_logs(const Experiment& ex, const std::filesystem::path& dir) {
  write_text(dir / "metrics.csv", metrics_csv(ex.state().metrics));
  std::string events;
  for (const auto& e : ex.state().events) events += e + "\n";
  write_text(dir / "events.log", events);
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                    std::optional<RunState> resume) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir))
    throw Error("cannot create output directory " + out_dir.string());
  {
    std::ofstream probe(out_dir / "metrics.csv", std::ios::app);
    if (!probe) throw Error("output directory is not writable: " + out_dir.string());
  }
  Experiment ex = resume ? Experiment(cfg, std::move(*resume)) : Experiment(cfg);
  while (!ex.done()) {
    ex.run_episode();
    if (cfg.snapshot_every > 0 && ex.episode() % cfg.snapshot_every == 0 && !ex.done()) {
      const auto dir = out_dir / "snapshots";
      std::filesystem::create_directories(dir);
      char name[48];
      std::snprintf(name, sizeof name, "episode_%06ld.json", ex.episode());
      save_snapshot(dir / name, ex.snapshot());
      write_logs(ex, out_dir);
    }
  }
  write_logs(ex, out_dir);
  save_snapshot(out_dir / "snapshot.json", ex.snapshot());
  write_text(out_dir / "behavior.dot", export_behavior_graph(ex.topology(), ex.params()));
}

}  // namespace ringnet
