#pragma once

#include "ringnet/net_core.hpp"

namespace ringnet {

struct Contributions {
  Eigen::VectorXd primary;        // share of basis activity per subnetwork
  Eigen::VectorXd supplementary;  // share of |W_sup diag(b)| landing on each subnetwork's patterns
};

// Throws UndefinedContributionError on zero denominators.
Contributions contributions(const Eigen::VectorXd& b, const LearnableParams<double>& params,
                            const Topology& topo);

}  // namespace ringnet
