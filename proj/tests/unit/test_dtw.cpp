#include "ringnet/dtw.hpp"
#include "ringnet/rng.hpp"

#include <doctest.h>

#include <vector>

using namespace ringnet;

namespace {

Eigen::MatrixXd seq(std::initializer_list<double> v) {
  Eigen::MatrixXd m(v.size(), 1);
  Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

// Full DP table, written independently of the rolling version.
double dtw_table(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Index n = a.rows(), m = b.rows();
  std::vector<std::vector<double>> D(n, std::vector<double>(m));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) {
      const double c = (a.row(i) - b.row(j)).cwiseAbs().sum();
      if (i == 0 && j == 0)
        D[i][j] = c;
      else if (i == 0)
        D[i][j] = c + D[i][j - 1];
      else if (j == 0)
        D[i][j] = c + D[i - 1][j];
      else
        D[i][j] = c + std::min({D[i - 1][j - 1], D[i - 1][j], D[i][j - 1]});
    }
  return D[n - 1][m - 1];
}

}  // namespace

TEST_CASE("hand cases") {
  CHECK(dtw_distance(seq({0, 0, 1}), seq({0, 1})) == 0.0);
  CHECK(dtw_distance(seq({0}), seq({1})) == 1.0);
  CHECK(dtw_distance(seq({1, 2, 3}), seq({1, 2, 3})) == 0.0);
  // Best path pairs 2 with 3 and 4 with 3: cost 1 + 1.
  CHECK(dtw_distance(seq({2, 4}), seq({3})) == 2.0);
  Eigen::MatrixXd a(2, 2), b(1, 2);
  a << 0, 0, 1, 1;
  b << 1, 0;
  CHECK(dtw_distance(a, b) == 2.0);
  CHECK_THROWS_AS(dtw_distance(Eigen::MatrixXd(0, 1), seq({1})), PreconditionError);
  CHECK_THROWS_AS(dtw_distance(a, seq({1})), StructuralError);
}

TEST_CASE("properties on random sequences") {
  Rng rng(17);
  std::uniform_int_distribution<int> len(1, 25);
  for (int k = 0; k < 100; ++k) {
    const Index n = len(rng), m = len(rng), d = 1 + k % 3;
    Eigen::MatrixXd a(n, d), b(m, d);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = standard_normal(rng);
    for (Index i = 0; i < b.size(); ++i) b.data()[i] = standard_normal(rng);
    const double ab = dtw_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(dtw_distance(a, a) == 0.0);
    CHECK(ab == dtw_distance(b, a));
    CHECK(ab == doctest::Approx(dtw_table(a, b)).epsilon(1e-12));
    // Repeating samples keeps a zero-cost path.
    Eigen::MatrixXd stretched(2 * n, d);
    for (Index i = 0; i < n; ++i) stretched.row(2 * i) = stretched.row(2 * i + 1) = a.row(i);
    CHECK(dtw_distance(a, stretched) == 0.0);
    CHECK(ab > 0.0);
  }
}
