#include "ringnet/synthesis.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <limits>
#include <string>

namespace ringnet {

namespace {

// Rows: propagated excitation, no excitation from the predecessor alone, no
// excitation from the trigger alone, self excitation, inhibition by an active
// successor. Unknowns: (w_prev, w_self, w_next, w_trigger, bias).
Eigen::Matrix<double, 5, 5> condition_matrix(const BoundaryParams& bp) {
  const double i = bp.iota, e = bp.eps, n = bp.n_neigh;
  Eigen::Matrix<double, 5, 5> a;
  a << i, e, e, i, 1,
       i + n * e, e, e, e, 1,
       n * e, e, e, i, 1,
       e, i, e, e, 1,
       i, i, i, i, 1;
  return a;
}

}  // namespace

double condition_number(const BoundaryParams& bp) {
  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 5>> svd(condition_matrix(bp));
  const auto& s = svd.singularValues();
  if (s[4] <= 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / s[4];
}

CParams solve_c_params(const BoundaryParams& bp) {
  const double cond = condition_number(bp);
  if (!(cond <= 1e12))
    throw DegenerateParamsError("boundary-condition matrix is singular (condition number " +
                                std::to_string(cond) + ")");
  Eigen::Matrix<double, 5, 1> rhs;
  rhs << bp.gamma, -bp.omega, -bp.omega, bp.omega, -bp.omega;
  const Eigen::Matrix<double, 5, 1> x = condition_matrix(bp).partialPivLu().solve(rhs);
  return {x[0], x[1], x[2], x[3], x[4]};
}

}  // namespace ringnet
