#include "ringnet/config.hpp"

#include "json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ringnet {

using nlohmann::json;

Index ExperimentConfig::n_fb() const {
  return conditions.empty() ? 0 : conditions.front().obs_base.size();
}

Index ExperimentConfig::n_actions() const {
  return conditions.empty() ? 0 : conditions.front().targets.cols();
}

const Condition& ExperimentConfig::condition(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  throw ConfigError("unknown condition '" + id + "'");
}

void ExperimentConfig::validate() const {
  if (episodes < 1) throw ConfigError("episodes must be at least 1");
  if (timesteps_per_episode < 1) throw ConfigError("timesteps_per_episode must be at least 1");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("tau must lie in (0,1)");
  if (initial_subnetworks < 1) throw ConfigError("initial_subnetworks must be at least 1");
  if (growth_cap && *growth_cap < 0) throw ConfigError("growth_cap must be nonnegative");
  if (grace_episodes < 0) throw ConfigError("grace_episodes must be nonnegative");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be nonnegative");
  if (!(motor_k > 0.0 && mass > 0.0 && gravity > 0.0)) throw ConfigError("mass, gravity and motor_k must be positive");
  learn.validate();
  if (!(sigmoid(boundary.omega) > 0.99)) throw ConfigError("boundary omega must saturate the sigmoid");
  if (!(boundary.gamma <= boundary.iota)) throw ConfigError("boundary gamma must not exceed iota");
  if (conditions.empty()) throw ConfigError("no conditions defined");
  std::set<std::string> ids;
  for (const auto& c : conditions) {
    c.validate();
    if (!ids.insert(c.id).second) throw ConfigError("duplicate condition '" + c.id + "'");
    if (c.obs_base.size() != n_fb() || c.targets.cols() != n_actions())
      throw ConfigError("condition '" + c.id + "' has inconsistent dimensions");
  }
  schedule.validate(episodes);
  for (const auto& e : schedule.entries) condition(e.condition_id);
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

LearnConfig parse_learn(const json& j) {
  check_keys(j,
             {"eta", "eta_sigma", "eta_v", "eta_o", "eta_dev_scale", "sigma_min", "sigma_max", "H",
              "basis_active_eps", "standardize_guard", "replay_capacity", "update_scaling"},
             "learning");
  LearnConfig c;
  read(j, "eta", c.eta);
  read(j, "eta_sigma", c.eta_sigma);
  read(j, "eta_v", c.eta_v);
  read(j, "eta_o", c.eta_o);
  read(j, "eta_dev_scale", c.eta_dev_scale);
  read(j, "sigma_min", c.sigma_min);
  read(j, "sigma_max", c.sigma_max);
  read(j, "H", c.H);
  read(j, "basis_active_eps", c.basis_active_eps);
  read(j, "standardize_guard", c.standardize_guard);
  read(j, "replay_capacity", c.replay_capacity);
  if (j.contains("update_scaling")) {
    const auto s = j.at("update_scaling").get<std::string>();
    if (s == "natural")
      c.scaling = UpdateScaling::kNatural;
    else if (s == "literal")
      c.scaling = UpdateScaling::kLiteral;
    else
      throw ConfigError("update_scaling must be 'natural' or 'literal'");
  }
  return c;
}

Condition parse_condition(const json& j) {
  check_keys(j, {"id", "targets", "obs_base", "obs_noise_std", "v_max"}, "condition");
  Condition c;
  c.id = j.at("id").get<std::string>();
  c.targets = json_io::matrix_from_json(j.at("targets"));
  c.obs_base = json_io::vector_from_json(j.at("obs_base"));
  read(j, "obs_noise_std", c.obs_noise_std);
  read(j, "v_max", c.v_max);
  return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    check_keys(j,
               {"seed", "episodes", "timesteps_per_episode", "reward_mode", "learning", "boundary", "tau",
                "initial_subnetworks", "growth_cap", "grace_episodes", "snapshot_every", "conditions",
                "schedule", "env", "output_dir", "ablation"},
               "config");
    read(j, "seed", c.seed);
    read(j, "episodes", c.episodes);
    read(j, "timesteps_per_episode", c.timesteps_per_episode);
    if (j.contains("reward_mode")) {
      const auto m = j.at("reward_mode").get<std::string>();
      if (m == "speed")
        c.reward_mode = RewardMode::kSpeed;
      else if (m == "cot")
        c.reward_mode = RewardMode::kCot;
      else
        throw ConfigError("reward_mode must be 'speed' or 'cot'");
    }
    if (j.contains("learning")) c.learn = parse_learn(j.at("learning"));
    if (j.contains("boundary")) {
      const json& b = j.at("boundary");
      check_keys(b, {"omega", "gamma", "iota", "eps", "n_neigh"}, "boundary");
      read(b, "omega", c.boundary.omega);
      read(b, "gamma", c.boundary.gamma);
      read(b, "iota", c.boundary.iota);
      read(b, "eps", c.boundary.eps);
      read(b, "n_neigh", c.boundary.n_neigh);
    }
    read(j, "tau", c.tau);
    read(j, "initial_subnetworks", c.initial_subnetworks);
    if (j.contains("growth_cap") && !j.at("growth_cap").is_null()) c.growth_cap = j.at("growth_cap").get<long>();
    read(j, "grace_episodes", c.grace_episodes);
    read(j, "snapshot_every", c.snapshot_every);
    if (j.contains("env")) {
      const json& e = j.at("env");
      check_keys(e, {"torque_gain", "torque_offset", "voltage", "motor_k", "mass", "gravity"}, "env");
      read(e, "torque_gain", c.env.torque_gain);
      read(e, "torque_offset", c.env.torque_offset);
      read(e, "voltage", c.env.voltage);
      read(e, "motor_k", c.motor_k);
      read(e, "mass", c.mass);
      read(e, "gravity", c.gravity);
    }
    read(j, "output_dir", c.output_dir);
    if (j.contains("ablation")) {
      const json& a = j.at("ablation");
      check_keys(a, {"disable_neurogenesis", "disable_supplementary", "naive_transfer"}, "ablation");
      read(a, "disable_neurogenesis", c.ablation.disable_neurogenesis);
      read(a, "disable_supplementary", c.ablation.disable_supplementary);
      read(a, "naive_transfer", c.ablation.naive_transfer);
    }
    for (const auto& cj : j.at("conditions")) c.conditions.push_back(parse_condition(cj));
    for (const auto& sj : j.at("schedule")) {
      check_keys(sj, {"begin", "end", "condition"}, "schedule entry");
      c.schedule.entries.push_back(
          {sj.at("begin").get<long>(), sj.at("end").get<long>(), sj.at("condition").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_text(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["episodes"] = c.episodes;
  j["timesteps_per_episode"] = c.timesteps_per_episode;
  j["reward_mode"] = c.reward_mode == RewardMode::kSpeed ? "speed" : "cot";
  const LearnConfig& l = c.learn;
  j["learning"] = {{"eta", l.eta},
                   {"eta_sigma", l.eta_sigma},
                   {"eta_v", l.eta_v},
                   {"eta_o", l.eta_o},
                   {"eta_dev_scale", l.eta_dev_scale},
                   {"sigma_min", l.sigma_min},
                   {"sigma_max", l.sigma_max},
                   {"H", l.H},
                   {"basis_active_eps", l.basis_active_eps},
                   {"standardize_guard", l.standardize_guard},
                   {"replay_capacity", l.replay_capacity},
                   {"update_scaling", l.scaling == UpdateScaling::kNatural ? "natural" : "literal"}};
  j["boundary"] = {{"omega", c.boundary.omega},
                   {"gamma", c.boundary.gamma},
                   {"iota", c.boundary.iota},
                   {"eps", c.boundary.eps},
                   {"n_neigh", c.boundary.n_neigh}};
  j["tau"] = c.tau;
  j["initial_subnetworks"] = c.initial_subnetworks;
  j["growth_cap"] = c.growth_cap ? json(*c.growth_cap) : json(nullptr);
  j["grace_episodes"] = c.grace_episodes;
  j["snapshot_every"] = c.snapshot_every;
  j["env"] = {{"torque_gain", c.env.torque_gain}, {"torque_offset", c.env.torque_offset},
              {"voltage", c.env.voltage},         {"motor_k", c.motor_k},
              {"mass", c.mass},                   {"gravity", c.gravity}};
  j["output_dir"] = c.output_dir;
  j["ablation"] = {{"disable_neurogenesis", c.ablation.disable_neurogenesis},
                   {"disable_supplementary", c.ablation.disable_supplementary},
                   {"naive_transfer", c.ablation.naive_transfer}};
  j["conditions"] = json::array();
  for (const auto& cond : c.conditions)
    j["conditions"].push_back({{"id", cond.id},
                               {"targets", json_io::to_json(cond.targets)},
                               {"obs_base", json_io::to_json(cond.obs_base)},
                               {"obs_noise_std", cond.obs_noise_std},
                               {"v_max", cond.v_max}});
  j["schedule"] = json::array();
  for (const auto& e : c.schedule.entries)
    j["schedule"].push_back({{"begin", e.begin}, {"end", e.end}, {"condition", e.condition_id}});
  return j.dump(2) + "\n";
}

}  // namespace ringnet
