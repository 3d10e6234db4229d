#pragma once

#include "ringnet/common.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace ringnet {

// Classic DTW over rows (time) with the L1 distance between rows as the
// local cost and the symmetric step pattern (match, insert, delete).
template <typename DA, typename DB>
double dtw_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const Index n = a.rows(), m = b.rows();
  if (n == 0 || m == 0) throw PreconditionError("dtw of an empty sequence");
  require_size(b.cols(), a.cols(), "dtw dimensions");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (Index i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (Index j = 1; j <= m; ++j) {
      const double cost = (a.row(i - 1) - b.row(j - 1)).cwiseAbs().sum();
      cur[j] = cost + std::min({prev[j - 1], prev[j], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace ringnet
