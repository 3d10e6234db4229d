#include "ringnet/envsim.hpp"
#include "ringnet/returns.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace ringnet;

namespace {

Condition cond4(const Eigen::MatrixXd& targets, double noise = 0.0) {
  return testing::terrain("c", targets, 0.0, noise);
}

// Mean per-episode return of a fixed W_mot, measured the same way as the oracle.
double rollout_return(const Condition& c, const Topology& topo, const FixedWeights<double>& fixed,
                      const Eigen::MatrixXd& W_mot) {
  auto p = make_learnable_params<double>(topo);
  p.W_mot = W_mot;
  auto s = initial_state(topo, p);
  for (int t = 0; t < 500; ++t) s = network_forward(s, c.obs_base, topo, fixed, p);
  Rng rng(0);
  SurrogateEnv env(topo.n_actions);
  double total = 0;
  for (int e = 0; e < 8; ++e) {
    Eigen::VectorXd r(30);
    for (int t = 0; t < 30; ++t) {
      s = network_forward(s, c.obs_base, topo, fixed, p);
      r[t] = env.step(s.m, dominant(s.b), c, rng).v;
    }
    total += assemble_returns(r, 14, RewardMode::kSpeed).mean();
  }
  return total / 8;
}

double window_mean(Index T, Index H) {
  return assemble_returns(Eigen::VectorXd::Ones(T), H, RewardMode::kSpeed).mean();
}

}  // namespace

TEST_CASE("reward shape") {
  const Eigen::MatrixXd tg = testing::base_targets();
  const Condition c = cond4(tg);
  Rng rng(1);
  CHECK(env_step(tg.row(2).transpose(), 2, c, rng).v == 1.0);
  CHECK(env_step(tg.row(2).transpose(), 6, c, rng).v == 1.0);

  Eigen::MatrixXd unit = Eigen::MatrixXd::Ones(4, 4);
  CHECK(env_step(Eigen::VectorXd::Zero(4), 0, cond4(unit), rng).v == 0.0);

  const EnvStep s = env_step(Eigen::VectorXd::Zero(4), 0, c, rng);
  CHECK(s.fb == c.obs_base);
  CHECK(s.voltages.isConstant(12.0));
  CHECK(s.torques.isConstant(0.02));
  CHECK(env_step(Eigen::VectorXd::Constant(4, 5.0), 1, c, rng).v == 0.0);
}

TEST_CASE("surrogate torque sees the previous action") {
  const Condition c = cond4(testing::base_targets());
  SurrogateEnv env(4);
  Rng rng(1);
  env.step(Eigen::VectorXd::Constant(4, 0.5), 0, c, rng);
  const EnvStep s = env.step(Eigen::VectorXd::Constant(4, 0.3), 0, c, rng);
  CHECK((s.torques.array() - (0.1 * 0.2 + 0.02)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("noise stream is seeded") {
  const Condition c = cond4(testing::base_targets(), 0.05);
  Rng a(42), b(42);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd act = Eigen::VectorXd::Constant(4, 0.1 * t);
    const EnvStep x = env_step(act, t, c, a), y = env_step(act, t, c, b);
    CHECK(x.fb == y.fb);
    CHECK(x.v == y.v);
    CHECK(x.v >= 0.0);
    CHECK(x.v <= c.v_max);
  }
}

TEST_CASE("schedule lookup") {
  Schedule s;
  s.entries = {{0, 100, "A"}, {100, 200, "B"}};
  CHECK(schedule_condition(0, s) == "A");
  CHECK(schedule_condition(99, s) == "A");
  CHECK(schedule_condition(100, s) == "B");
  CHECK_THROWS_AS(schedule_condition(250, s), PreconditionError);
  CHECK_NOTHROW(s.validate(200));
  CHECK_THROWS_AS(s.validate(201), ConfigError);
  Schedule gap;
  gap.entries = {{0, 10, "A"}, {12, 20, "B"}};
  CHECK_THROWS_AS(gap.validate(20), ConfigError);
}

TEST_CASE("condition validation") {
  Condition c = cond4(testing::base_targets());
  CHECK_NOTHROW(c.validate());
  c.obs_noise_std = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = cond4(Eigen::MatrixXd::Zero(3, 4));
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("oracle weights") {
  const Topology topo = make_ring_topology(21, 4);
  const auto fixed = build_fixed_weights<double>(topo);

  SUBCASE("zero targets") {
    const OracleResult o = oracle_weights(cond4(Eigen::MatrixXd::Zero(4, 4)), topo, fixed);
    CHECK(o.W_mot.isZero());
    CHECK(o.mean_return == doctest::Approx(window_mean(30, 14)));
  }
  SUBCASE("single nonzero entry") {
    Eigen::MatrixXd tg = Eigen::MatrixXd::Zero(4, 4);
    tg(1, 2) = 0.6;
    const OracleResult o = oracle_weights(cond4(tg), topo, fixed);
    CHECK(o.mean_return / window_mean(30, 14) >= 0.95);
    CHECK(o.W_mot.row(2).cwiseAbs().maxCoeff() > 0);
    CHECK(o.W_mot.row(0).isZero(1e-12));
  }
  SUBCASE("dominates random weights") {
    const Condition c = cond4(testing::base_targets());
    const OracleResult o = oracle_weights(c, topo, fixed);
    Rng rng(99);
    for (int draw = 0; draw < 100; ++draw) {
      Eigen::MatrixXd W(4, 4);
      for (Index i = 0; i < W.size(); ++i) W.data()[i] = 0.5 * standard_normal(rng);
      REQUIRE(rollout_return(c, topo, fixed, W) <= o.mean_return);
    }
  }
}
