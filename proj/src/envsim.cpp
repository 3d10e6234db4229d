#include "ringnet/envsim.hpp"

#include "ringnet/returns.hpp"

#include <Eigen/QR>

namespace ringnet {

void Condition::validate() const {
  if (id.empty()) throw ConfigError("condition without id");
  if (targets.rows() != kPhases) throw ConfigError("condition " + id + ": targets need 4 rows");
  if (!targets.allFinite() || !obs_base.allFinite())
    throw ConfigError("condition " + id + ": non-finite values");
  if (!(obs_noise_std >= 0.0)) throw ConfigError("condition " + id + ": negative noise");
  if (!(v_max > 0.0)) throw ConfigError("condition " + id + ": v_max must be positive");
}

void Schedule::validate(long episodes) const {
  long next = 0;
  for (const auto& e : entries) {
    if (e.begin != next) throw ConfigError("schedule ranges must be contiguous from episode 0");
    if (e.end <= e.begin) throw ConfigError("empty schedule range");
    next = e.end;
  }
  if (next < episodes) throw ConfigError("schedule does not cover every episode");
}

const std::string& schedule_condition(long episode, const Schedule& sched) {
  for (const auto& e : sched.entries)
    if (episode >= e.begin && episode < e.end) return e.condition_id;
  throw PreconditionError("episode " + std::to_string(episode) + " is not covered by the schedule");
}

SurrogateEnv::SurrogateEnv(Index n_actions, EnvParams params)
    : params_(params), prev_(Eigen::VectorXd::Zero(n_actions)) {}

void SurrogateEnv::set_previous_action(const Eigen::VectorXd& a) {
  require_size(a.size(), prev_.size(), "previous action");
  prev_ = a;
}

namespace {

EnvStep step_impl(const Eigen::VectorXd& action, const Eigen::VectorXd& prev, Index phase_hint,
                  const Condition& cond, Rng& rng, const EnvParams& params) {
  require_size(action.size(), cond.targets.cols(), "env_step action");
  if (!action.allFinite()) throw PreconditionError("non-finite action");
  const Index na = action.size();
  EnvStep out;
  const auto target = cond.targets.row(phase_hint % kPhases).transpose();
  out.v = cond.v_max * std::max(0.0, 1.0 - (action - target).squaredNorm() / double(na));
  out.fb = cond.obs_base;
  if (cond.obs_noise_std > 0.0)
    for (Index i = 0; i < out.fb.size(); ++i) out.fb[i] += cond.obs_noise_std * standard_normal(rng);
  out.torques = (params.torque_gain * (action - prev).array().abs() + params.torque_offset).matrix();
  out.voltages = Eigen::VectorXd::Constant(na, params.voltage);
  return out;
}

}  // namespace

EnvStep SurrogateEnv::step(const Eigen::VectorXd& action, Index phase_hint, const Condition& cond, Rng& rng) {
  EnvStep out = step_impl(action, prev_, phase_hint, cond, rng, params_);
  prev_ = action;
  return out;
}

EnvStep env_step(const Eigen::VectorXd& action, Index phase_hint, const Condition& cond, Rng& rng,
                 const EnvParams& params) {
  return step_impl(action, Eigen::VectorXd::Zero(action.size()), phase_hint, cond, rng, params);
}

OracleResult oracle_weights(const Condition& cond, const Topology& topo, const FixedWeights<double>& fixed,
                            const OracleOptions& opts) {
  cond.validate();
  require_size(cond.targets.cols(), topo.n_actions, "oracle targets");
  const SubnetRange r = topo.subnets.at(opts.subnet);
  LearnableParams<double> params = make_learnable_params<double>(topo);
  NetworkState<double> state = initial_state(topo, params, opts.subnet);
  const Eigen::VectorXd fb = cond.obs_base;

  Eigen::MatrixXd P(opts.fit_steps, r.size);
  Eigen::MatrixXd Y(opts.fit_steps, topo.n_actions);
  for (Index t = 0; t < opts.warmup + opts.fit_steps; ++t) {
    state = network_forward(state, fb, topo, fixed, params);
    if (t < opts.warmup) continue;
    P.row(t - opts.warmup) = state.pm.segment(r.begin, r.size).transpose();
    Y.row(t - opts.warmup) = cond.targets.row(dominant(state.b) % kPhases);
  }
  const Eigen::MatrixXd W = P.colPivHouseholderQr().solve(Y).transpose();
  params.W_mot.setZero();
  params.W_mot.middleCols(r.begin, r.size) = W;

  OracleResult out;
  out.W_mot = params.W_mot;
  Rng rng(0);
  SurrogateEnv env(topo.n_actions);
  double total = 0;
  for (Index e = 0; e < opts.episodes; ++e) {
    Eigen::VectorXd rewards(opts.episode_length);
    for (Index t = 0; t < opts.episode_length; ++t) {
      state = network_forward(state, fb, topo, fixed, params);
      rewards[t] = env.step(state.m, dominant(state.b), cond, rng).v;
    }
    total += assemble_returns(rewards, opts.H, RewardMode::kSpeed).mean();
  }
  out.mean_return = total / double(opts.episodes);
  return out;
}

}  // namespace ringnet
