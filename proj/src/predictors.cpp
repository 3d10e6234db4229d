#include "ringnet/predictors.hpp"

#include "ringnet/returns.hpp"

namespace ringnet {

namespace {

constexpr double kCurvatureGuard = 1e-8;

struct Stacked {
  Eigen::MatrixXd X;   // horizon-summed bases
  Eigen::MatrixXd B;   // bases
  Eigen::MatrixXd FB;  // feedback
  Eigen::VectorXd R;
  std::vector<Index> offset;  // first row of each episode
};

Stacked stack(const ReplayBuffer& replay, Index H) {
  if (replay.empty()) throw PreconditionError("replay buffer is empty");
  const Index N = replay.total_steps();
  const Index n = replay[0].states.front().b.size();
  const Index nfb = replay[0].states.front().fb.size();
  Stacked s;
  s.X.resize(N, n);
  s.B.resize(N, n);
  s.FB.resize(N, nfb);
  s.R.resize(N);
  Index row = 0;
  for (const EpisodeTrace& tr : replay) {
    const Index T = tr.length();
    require_size(tr.returns.size(), T, "trace returns");
    s.offset.push_back(row);
    s.B.middleRows(row, T) = tr.bases();
    s.X.middleRows(row, T) = horizon_sum_rows(s.B.middleRows(row, T), H);
    s.FB.middleRows(row, T) = tr.feedback();
    s.R.segment(row, T) = tr.returns;
    row += T;
  }
  s.offset.push_back(row);
  return s;
}

double curvature(const Eigen::MatrixXd& X) {
  return 2.0 * X.rowwise().squaredNorm().mean() + kCurvatureGuard;
}

}  // namespace

double value_loss(const Eigen::VectorXd& w_val, const ReplayBuffer& replay, Index H) {
  const Stacked s = stack(replay, H);
  return (s.X * w_val - s.R).squaredNorm() / double(s.R.size());
}

Eigen::VectorXd value_loss_gradient(const Eigen::VectorXd& w_val, const ReplayBuffer& replay, Index H) {
  const Stacked s = stack(replay, H);
  return 2.0 / double(s.R.size()) * s.X.transpose() * (s.X * w_val - s.R);
}

double observation_loss(const Eigen::MatrixXd& W_obs, const ReplayBuffer& replay) {
  const Stacked s = stack(replay, 1);
  return (s.B * W_obs.transpose() - s.FB).squaredNorm() / double(s.B.rows());
}

Eigen::MatrixXd observation_loss_gradient(const Eigen::MatrixXd& W_obs, const ReplayBuffer& replay) {
  const Stacked s = stack(replay, 1);
  return 2.0 / double(s.B.rows()) * (s.B * W_obs.transpose() - s.FB).transpose() * s.B;
}

void fit_predictors(LearnableParams<double>& params, const ReplayBuffer& replay, const LearnConfig& cfg) {
  const Stacked s = stack(replay, cfg.H);
  const double N = double(s.R.size());
  const std::size_t E = replay.size();
  const double kb = curvature(s.B);

  // Value, then its deviation head against the updated prediction.
  params.w_val -= cfg.eta_v / curvature(s.X) * (2.0 / N * s.X.transpose() * (s.X * params.w_val - s.R));

  Eigen::VectorXd dev_target(s.R.size());
  const Eigen::VectorXd value_err = (s.X * params.w_val - s.R).cwiseAbs();
  for (std::size_t e = 0; e < E; ++e) {
    const Index a = s.offset[e], len = s.offset[e + 1] - a;
    dev_target.segment(a, len).setConstant(value_err.segment(a, len).maxCoeff());
  }
  params.w_valdev -= cfg.eta_v * cfg.eta_dev_scale / kb *
                     (2.0 / N * s.B.transpose() * (s.B * params.w_valdev - dev_target));

  // Observation, then its per-channel deviation head.
  params.W_obs -= cfg.eta_o / kb * (2.0 / N * (s.B * params.W_obs.transpose() - s.FB).transpose() * s.B);

  const Eigen::MatrixXd obs_err = (s.FB - s.B * params.W_obs.transpose()).cwiseAbs();
  Eigen::MatrixXd obs_target(obs_err.rows(), obs_err.cols());
  for (std::size_t e = 0; e < E; ++e) {
    const Index a = s.offset[e], len = s.offset[e + 1] - a;
    const Eigen::RowVectorXd peak = obs_err.middleRows(a, len).colwise().maxCoeff();
    obs_target.middleRows(a, len) = peak.replicate(len, 1);
  }
  params.W_obsdev -= cfg.eta_o * cfg.eta_dev_scale / kb *
                     (2.0 / N * (s.B * params.W_obsdev.transpose() - obs_target).transpose() * s.B);
}

double basis_sum_scale(const ReplayBuffer& replay) {
  if (replay.empty()) return 1.0;
  double sum = 0;
  for (const EpisodeTrace& tr : replay)
    for (const auto& st : tr.states) sum += st.b.sum();
  const double mean = sum / double(replay.total_steps());
  return mean > 0.0 ? mean : 1.0;
}

std::vector<ClassifierTemplate> classifier_templates(const LearnableParams<double>& params,
                                                     const Topology& topo, double scale) {
  require_size(params.n_c(), topo.n_c(), "classifier_templates params");
  std::vector<ClassifierTemplate> out;
  for (Index s = 0; s < topo.num_subnets(); ++s) {
    const SubnetRange& r = topo.subnets[s];
    for (Index k = r.begin; k < r.end(); ++k) {
      if ((params.W_obs.col(k).array() == 0.0).all()) continue;
      ClassifierTemplate t;
      t.input = params.W_obs.col(k) * scale;
      t.target = Eigen::VectorXd::Zero(topo.n_c());
      t.target.segment(r.begin, r.size).setOnes();
      t.subnet = s;
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace {

Eigen::VectorXd logits_to_prob(const Eigen::VectorXd& z) {
  return z.unaryExpr([](double x) { return sigmoid(x); });
}

// Cross-entropy from logits, stable for large |z|.
double cross_entropy(const Eigen::VectorXd& z, const Eigen::VectorXd& y) {
  double l = 0;
  for (Index i = 0; i < z.size(); ++i)
    l += std::max(z[i], 0.0) - z[i] * y[i] + std::log1p(std::exp(-std::abs(z[i])));
  return l;
}

}  // namespace

double classifier_loss(const Eigen::MatrixXd& W_cls, const Eigen::VectorXd& b_cls,
                       const std::vector<ClassifierTemplate>& templates) {
  if (templates.empty()) return 0.0;
  double l = 0;
  for (const auto& t : templates) l += cross_entropy(W_cls * t.input + b_cls, t.target);
  return l / double(templates.size());
}

void classifier_loss_gradient(const Eigen::MatrixXd& W_cls, const Eigen::VectorXd& b_cls,
                              const std::vector<ClassifierTemplate>& templates, Eigen::MatrixXd& dW,
                              Eigen::VectorXd& db) {
  dW = Eigen::MatrixXd::Zero(W_cls.rows(), W_cls.cols());
  db = Eigen::VectorXd::Zero(b_cls.size());
  if (templates.empty()) return;
  for (const auto& t : templates) {
    const Eigen::VectorXd err = logits_to_prob(W_cls * t.input + b_cls) - t.target;
    dW += err * t.input.transpose();
    db += err;
  }
  dW /= double(templates.size());
  db /= double(templates.size());
}

bool fit_classifier(LearnableParams<double>& params, const Topology& topo, double eta_o, double scale) {
  const auto templates = classifier_templates(params, topo, scale);
  if (templates.empty()) return false;
  for (const auto& t : templates) {
    const Eigen::VectorXd err = logits_to_prob(params.W_cls * t.input + params.b_cls) - t.target;
    params.W_cls.noalias() -= eta_o * err * t.input.transpose();
    params.b_cls -= eta_o * err;
  }
  return true;
}

Index preferred_subnet(const LearnableParams<double>& params, const Topology& topo,
                       const Eigen::VectorXd& fb) {
  const Eigen::VectorXd p = logits_to_prob(params.W_cls * fb + params.b_cls);
  Index best = 0;
  double best_v = -1;
  for (Index s = 0; s < topo.num_subnets(); ++s) {
    const SubnetRange& r = topo.subnets[s];
    const double v = p.segment(r.begin, r.size).mean();
    if (v > best_v) {
      best_v = v;
      best = s;
    }
  }
  return best;
}

bool templates_routed(const LearnableParams<double>& params, const Topology& topo,
                      const std::vector<ClassifierTemplate>& templates) {
  for (const auto& t : templates)
    if (preferred_subnet(params, topo, t.input) != t.subnet) return false;
  return true;
}

}  // namespace ringnet
