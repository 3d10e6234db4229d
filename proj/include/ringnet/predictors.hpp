#pragma once

#include "ringnet/episode.hpp"

#include <vector>

namespace ringnet {

// Mean squared losses over every (episode, t) in the buffer.
// Value: features are horizon sums of the bases, target R.
double value_loss(const Eigen::VectorXd& w_val, const ReplayBuffer& replay, Index H);
Eigen::VectorXd value_loss_gradient(const Eigen::VectorXd& w_val, const ReplayBuffer& replay, Index H);
// Observation: W_obs b against the recorded feedback.
double observation_loss(const Eigen::MatrixXd& W_obs, const ReplayBuffer& replay);
Eigen::MatrixXd observation_loss_gradient(const Eigen::MatrixXd& W_obs, const ReplayBuffer& replay);

// One normalized gradient step on each of the four predictor heads.
void fit_predictors(LearnableParams<double>& params, const ReplayBuffer& replay, const LearnConfig& cfg);

// Mean of sum(b) over the buffer; 1 when the buffer is empty or silent.
double basis_sum_scale(const ReplayBuffer& replay);

struct ClassifierTemplate {
  Eigen::VectorXd input;
  Eigen::VectorXd target;
  Index subnet = 0;
};

// One template per basis whose observation column has been trained.
std::vector<ClassifierTemplate> classifier_templates(const LearnableParams<double>& params,
                                                     const Topology& topo, double scale = 1.0);

// Mean over templates of the summed sigmoid cross-entropy.
double classifier_loss(const Eigen::MatrixXd& W_cls, const Eigen::VectorXd& b_cls,
                       const std::vector<ClassifierTemplate>& templates);
void classifier_loss_gradient(const Eigen::MatrixXd& W_cls, const Eigen::VectorXd& b_cls,
                              const std::vector<ClassifierTemplate>& templates, Eigen::MatrixXd& dW,
                              Eigen::VectorXd& db);

// One epoch of per-template gradient descent at eta_o. Returns false when
// there are no templates yet.
bool fit_classifier(LearnableParams<double>& params, const Topology& topo, double eta_o,
                    double scale = 1.0);

// Subnetwork with the highest mean I' for a feedback vector.
Index preferred_subnet(const LearnableParams<double>& params, const Topology& topo,
                       const Eigen::VectorXd& fb);

// True when every template is routed to its own subnetwork.
bool templates_routed(const LearnableParams<double>& params, const Topology& topo,
                      const std::vector<ClassifierTemplate>& templates);

}  // namespace ringnet
