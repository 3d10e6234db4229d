#include "ringnet/neurogenesis.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace ringnet {

namespace {

std::string node_name(const Topology& topo, Index i) {
  return "\"sub" + std::to_string(topo.subnet_of(i)) + "/C" + std::to_string(i) + "\"";
}

std::string channel_label(const Eigen::VectorXd& row) {
  std::vector<Index> order(row.size());
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&row](Index a, Index b) { return std::abs(row[a]) > std::abs(row[b]); });
  std::string label;
  for (std::size_t k = 0; k < std::min<std::size_t>(2, order.size()); ++k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "fb%ld=%.3g", static_cast<long>(order[k]), row[order[k]]);
    if (!label.empty()) label += " ";
    label += buf;
  }
  return label;
}

}  // namespace

std::string export_behavior_graph(const Topology& topo, const LearnableParams<double>& params) {
  if (topo.n_c() == 0 || topo.subnets.empty()) throw PreconditionError("empty topology");
  require_size(params.n_c(), topo.n_c(), "export_behavior_graph params");
  std::ostringstream os;
  os << "digraph behavior {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (Index s = 0; s < topo.num_subnets(); ++s) {
    const SubnetRange& r = topo.subnets[s];
    os << "  subgraph cluster_sub" << s << " {\n    label=\"sub" << s << "\";\n";
    for (Index i = r.begin; i < r.end(); ++i) os << "    " << node_name(topo, i) << ";\n";
    os << "  }\n";
  }
  for (Index r = 0; r < topo.n_c(); ++r)
    for (Index c = 0; c < topo.n_c(); ++c) {
      if (!topo.kappa(r, c)) continue;
      os << "  " << node_name(topo, r) << " -> " << node_name(topo, c);
      if (topo.feedback_dependent(c))
        os << " [style=dashed, label=\"" << channel_label(params.W_cls.row(c).transpose()) << "\"]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace ringnet
