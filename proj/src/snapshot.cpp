#include "ringnet/snapshot.hpp"

#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace ringnet {

using nlohmann::json;
using json_io::to_json;

namespace {

constexpr const char* kFormat = "ringnet-snapshot";

json state_to_json(const NetworkState<double>& s) {
  return {{"fb", to_json(s.fb)}, {"ip1", to_json(s.ip1)}, {"ip2", to_json(s.ip2)}, {"c", to_json(s.c)},
          {"b", to_json(s.b)},   {"pm", to_json(s.pm)},   {"m", to_json(s.m)},     {"v", s.v},
          {"vdev", s.vdev},      {"o", to_json(s.o)},     {"odev", to_json(s.odev)}};
}

NetworkState<double> state_from_json(const json& j) {
  NetworkState<double> s;
  s.fb = json_io::vector_from_json(j.at("fb"));
  s.ip1 = json_io::vector_from_json(j.at("ip1"));
  s.ip2 = json_io::vector_from_json(j.at("ip2"));
  s.c = json_io::vector_from_json(j.at("c"));
  s.b = json_io::vector_from_json(j.at("b"));
  s.pm = json_io::vector_from_json(j.at("pm"));
  s.m = json_io::vector_from_json(j.at("m"));
  s.v = j.at("v").get<double>();
  s.vdev = j.at("vdev").get<double>();
  s.o = json_io::vector_from_json(j.at("o"));
  s.odev = json_io::vector_from_json(j.at("odev"));
  return s;
}

json topology_to_json(const Topology& t) {
  json edges = json::array();
  for (Index r = 0; r < t.n_c(); ++r)
    for (Index c = 0; c < t.n_c(); ++c)
      if (t.kappa(r, c)) edges.push_back({r, c});
  json subnets = json::array();
  for (const auto& s : t.subnets) subnets.push_back({s.begin, s.size});
  return {{"n_c", t.n_c()}, {"n_fb", t.n_fb}, {"n_actions", t.n_actions},
          {"tau", to_json(t.tau)}, {"subnets", subnets}, {"transitions", edges}};
}

Topology topology_from_json(const json& j) {
  Topology t;
  const Index n = j.at("n_c").get<Index>();
  t.n_fb = j.at("n_fb").get<Index>();
  t.n_actions = j.at("n_actions").get<Index>();
  t.tau = json_io::vector_from_json(j.at("tau"));
  t.kappa = BoolMat::Constant(n, n, false);
  for (const auto& e : j.at("transitions")) {
    const Index r = e.at(0).get<Index>(), c = e.at(1).get<Index>();
    if (r < 0 || r >= n || c < 0 || c >= n) throw CorruptFileError("transition index out of range");
    t.kappa(r, c) = true;
  }
  for (const auto& s : j.at("subnets")) t.subnets.push_back({s.at(0).get<Index>(), s.at(1).get<Index>()});
  return t;
}

json params_to_json(const LearnableParams<double>& p) {
  return {{"W_cls", to_json(p.W_cls)},         {"b_cls", to_json(p.b_cls)},
          {"W_sup", to_json(p.W_sup)},         {"W_mot", to_json(p.W_mot)},
          {"w_val", to_json(p.w_val)},         {"w_valdev", to_json(p.w_valdev)},
          {"W_obs", to_json(p.W_obs)},         {"W_obsdev", to_json(p.W_obsdev)},
          {"sigma_mot", to_json(p.sigma_mot)}, {"sigma_sup", to_json(p.sigma_sup)},
          {"eps_v", p.eps_v},                  {"eps_o", p.eps_o}};
}

LearnableParams<double> params_from_json(const json& j, const Topology& t) {
  using json_io::matrix_from_json;
  LearnableParams<double> p;
  p.W_cls = matrix_from_json(j.at("W_cls"), t.n_fb);
  p.b_cls = json_io::vector_from_json(j.at("b_cls"));
  p.W_sup = matrix_from_json(j.at("W_sup"));
  p.W_mot = matrix_from_json(j.at("W_mot"));
  p.w_val = json_io::vector_from_json(j.at("w_val"));
  p.w_valdev = json_io::vector_from_json(j.at("w_valdev"));
  p.W_obs = matrix_from_json(j.at("W_obs"));
  p.W_obsdev = matrix_from_json(j.at("W_obsdev"));
  p.sigma_mot = matrix_from_json(j.at("sigma_mot"));
  p.sigma_sup = matrix_from_json(j.at("sigma_sup"));
  p.eps_v = j.at("eps_v").get<double>();
  p.eps_o = j.at("eps_o").get<double>();
  const Index n = t.n_c();
  const bool ok = p.W_cls.rows() == n && p.W_cls.cols() == t.n_fb && p.b_cls.size() == n &&
                  p.W_sup.rows() == n && p.W_sup.cols() == n && p.W_mot.rows() == t.n_actions &&
                  p.W_mot.cols() == n && p.w_val.size() == n && p.w_valdev.size() == n &&
                  p.W_obs.rows() == t.n_fb && p.W_obs.cols() == n && p.W_obsdev.rows() == t.n_fb &&
                  p.W_obsdev.cols() == n && p.sigma_mot.rows() == t.n_actions && p.sigma_mot.cols() == n &&
                  p.sigma_sup.rows() == n && p.sigma_sup.cols() == n;
  if (!ok) throw CorruptFileError("parameter dimensions do not match the topology");
  return p;
}

json trace_to_json(const EpisodeTrace& tr) {
  json states = json::array();
  for (const auto& s : tr.states) states.push_back(state_to_json(s));
  return {{"condition_id", tr.condition_id},
          {"rewards", to_json(tr.rewards)},
          {"returns", to_json(tr.returns)},
          {"perturbation_mot", to_json(tr.perturbation.mot)},
          {"perturbation_sup", to_json(tr.perturbation.sup)},
          {"states", states}};
}

EpisodeTrace trace_from_json(const json& j) {
  EpisodeTrace tr;
  tr.condition_id = j.at("condition_id").get<std::string>();
  tr.rewards = json_io::vector_from_json(j.at("rewards"));
  tr.returns = json_io::vector_from_json(j.at("returns"));
  tr.perturbation.mot = json_io::matrix_from_json(j.at("perturbation_mot"));
  tr.perturbation.sup = json_io::matrix_from_json(j.at("perturbation_sup"));
  for (const auto& s : j.at("states")) tr.states.push_back(state_from_json(s));
  return tr;
}

json row_to_json(const MetricsRow& r) {
  return {{"episode", r.episode},
          {"condition_id", r.condition_id},
          {"mean_return", r.mean_return},
          {"min_return", r.min_return},
          {"value_pred", r.value_pred},
          {"value_band_lo", r.value_band_lo},
          {"active_subnetwork", r.active_subnetwork},
          {"subnetwork_count", r.subnetwork_count},
          {"primary", r.primary},
          {"supplementary", r.supplementary},
          {"grew", r.grew}};
}

MetricsRow row_from_json(const json& j) {
  MetricsRow r;
  r.episode = j.at("episode").get<long>();
  r.condition_id = j.at("condition_id").get<std::string>();
  r.mean_return = j.at("mean_return").get<double>();
  r.min_return = j.at("min_return").get<double>();
  r.value_pred = j.at("value_pred").get<double>();
  r.value_band_lo = j.at("value_band_lo").get<double>();
  r.active_subnetwork = j.at("active_subnetwork").get<Index>();
  r.subnetwork_count = j.at("subnetwork_count").get<Index>();
  r.primary = j.at("primary").get<std::vector<double>>();
  r.supplementary = j.at("supplementary").get<std::vector<double>>();
  r.grew = j.at("grew").get<bool>();
  return r;
}

}  // namespace

std::string snapshot_to_text(const RunState& s) {
  json j;
  j["format"] = kFormat;
  j["version"] = kSnapshotVersion;
  j["episode"] = s.episode;
  j["topology"] = topology_to_json(s.topo);
  j["c_params"] = {s.c_params.w_prev, s.c_params.w_self, s.c_params.w_next, s.c_params.w_trigger,
                   s.c_params.bias};
  j["params"] = params_to_json(s.params);
  j["state"] = state_to_json(s.state);
  j["last_fb"] = to_json(s.last_fb);
  j["prev_action"] = to_json(s.prev_action);
  json replay = json::array();
  for (const auto& tr : s.replay) replay.push_back(trace_to_json(tr));
  j["replay"] = {{"capacity", s.replay.capacity()}, {"traces", replay}};
  j["rng"] = s.rng;
  j["runner"] = {{"grace", s.grace},
                 {"last_active", s.last_active},
                 {"last_preferred", s.last_preferred},
                 {"last_growth_episode", s.last_growth_episode}};
  json rows = json::array();
  for (const auto& r : s.metrics) rows.push_back(row_to_json(r));
  j["metrics"] = rows;
  j["events"] = s.events;
  return j.dump(1) + "\n";
}

RunState snapshot_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != kFormat) throw CorruptFileError("not a snapshot file");
    const int version = j.at("version").get<int>();
    if (version != kSnapshotVersion)
      throw VersionMismatchError("snapshot version " + std::to_string(version) + " is not supported (expected " +
                                 std::to_string(kSnapshotVersion) + ")");
    RunState s;
    s.episode = j.at("episode").get<long>();
    s.topo = topology_from_json(j.at("topology"));
    try {
      validate(s.topo, RingRule::kAtLeastThree);
    } catch (const StructuralError& e) {
      throw CorruptFileError(std::string("invalid topology: ") + e.what());
    }
    const auto cp = j.at("c_params").get<std::vector<double>>();
    if (cp.size() != 5) throw CorruptFileError("c_params must have 5 entries");
    s.c_params = {cp[0], cp[1], cp[2], cp[3], cp[4]};
    s.params = params_from_json(j.at("params"), s.topo);
    s.state = state_from_json(j.at("state"));
    s.last_fb = json_io::vector_from_json(j.at("last_fb"));
    s.prev_action = json_io::vector_from_json(j.at("prev_action"));
    s.replay = ReplayBuffer(j.at("replay").at("capacity").get<std::size_t>());
    for (const auto& tr : j.at("replay").at("traces")) s.replay.push(trace_from_json(tr));
    s.rng = j.at("rng").get<std::string>();
    const json& r = j.at("runner");
    s.grace = r.at("grace").get<long>();
    s.last_active = r.at("last_active").get<Index>();
    s.last_preferred = r.at("last_preferred").get<Index>();
    s.last_growth_episode = r.at("last_growth_episode").get<long>();
    for (const auto& row : j.at("metrics")) s.metrics.push_back(row_from_json(row));
    s.events = j.at("events").get<std::vector<std::string>>();
    return s;
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("snapshot field error: ") + e.what());
  }
}

void save_snapshot(const std::filesystem::path& path, const RunState& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write snapshot " + path.string());
  out << snapshot_to_text(s);
  if (!out) throw Error("failed writing snapshot " + path.string());
}

RunState load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFileError("cannot open snapshot " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return snapshot_from_text(ss.str());
}

}  // namespace ringnet
