#include "ringnet/exploration.hpp"
#include "ringnet/policy_gradient.hpp"
#include "ringnet/returns.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace ringnet;

namespace {

// A trace whose bases and premotor patterns are held constant.
EpisodeTrace constant_trace(const Eigen::VectorXd& b, const Eigen::VectorXd& pm, Index T, Perturbation off,
                            const Eigen::VectorXd& returns) {
  EpisodeTrace tr;
  NetworkState<double> s;
  s.b = b;
  s.pm = pm;
  tr.states.assign(T, s);
  tr.perturbation = std::move(off);
  tr.rewards = returns;
  tr.returns = returns;
  return tr;
}

Perturbation zero_offset(Index na, Index n) {
  return {Eigen::MatrixXd::Zero(na, n), Eigen::MatrixXd::Zero(n, n)};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("advantages standardization") {
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(4), w = Eigen::VectorXd::Zero(4);
  ReplayBuffer rb;
  rb.push(constant_trace(b, b, 2, zero_offset(1, 4), Eigen::VectorXd::Constant(2, 3.0)));
  CHECK(compute_advantages(rb, w, 14)[0].isZero());

  ReplayBuffer pm;
  Eigen::VectorXd r(2);
  r << 1, -1;
  pm.push(constant_trace(b, b, 2, zero_offset(1, 4), r));
  const auto a = compute_advantages(pm, w, 14);
  CHECK(a[0][0] == doctest::Approx(1.0));
  CHECK(a[0][1] == doctest::Approx(-1.0));

  ReplayBuffer shifted;
  shifted.push(constant_trace(b, b, 2, zero_offset(1, 4), r.array() + 17.0));
  const auto s = compute_advantages(shifted, w, 14);
  CHECK(s[0][0] == doctest::Approx(a[0][0]));
  CHECK(s[0][1] == doctest::Approx(a[0][1]));
}

TEST_CASE("advantages subtract the horizon-summed value") {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(4), w = Eigen::VectorXd::Zero(4);
  b[0] = 1;
  w[0] = 0.5;
  ReplayBuffer rb;
  Eigen::VectorXd R(3);
  R << 1.5, 1.0, 0.5;  // exactly 0.5 per remaining step
  rb.push(constant_trace(b, b, 3, zero_offset(1, 4), R));
  CHECK(compute_advantages(rb, w, 14)[0].isZero());
}

TEST_CASE("gradient weights match central differences") {
  const Topology topo = make_chain_topology(2, 3, 3);
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = make_learnable_params<double>(topo);
    for (Index i = 0; i < p.W_mot.size(); ++i) p.W_mot.data()[i] = standard_normal(rng);
    const BoolMat cross = cross_subnet_mask(topo);
    for (Index i = 0; i < 8; ++i)
      for (Index k = 0; k < 8; ++k)
        if (cross(i, k)) p.W_sup(i, k) = 0.3 * standard_normal(rng);
    Eigen::VectorXd b(8);
    for (Index i = 0; i < 8; ++i) b[i] = std::abs(standard_normal(rng));
    const Eigen::VectorXd pm = premotor_step(b, p);
    auto motor = [&](const LearnableParams<double>& q) { return output_step(premotor_step(b, q), b, q).m; };
    const double h = 1e-5;

    const Eigen::MatrixXd gm = motor_gradient_weights(pm, 3);
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 8; ++k) {
        auto up = p, dn = p;
        up.W_mot(j, k) += h;
        dn.W_mot(j, k) -= h;
        const double fd = (motor(up)[j] - motor(dn)[j]) / (2 * h);
        CHECK(rel_err(gm(j, k), std::abs(fd)) < 1e-6);
      }

    const Eigen::MatrixXd gs = supplementary_gradient_weights(p.W_mot, b);
    for (Index i = 0; i < 8; ++i)
      for (Index k = 0; k < 8; ++k) {
        auto up = p, dn = p;
        up.W_sup(i, k) += h;
        dn.W_sup(i, k) -= h;
        const double fd = ((motor(up) - motor(dn)) / (2 * h)).cwiseAbs().sum();
        CHECK(rel_err(gs(i, k), fd) < 1e-6);
      }
  }
}

TEST_CASE("masked columns do not move") {
  const Topology topo = make_chain_topology(2, 21, 2);
  auto p = make_learnable_params<double>(topo);
  p.W_mot.setRandom();
  const LearnableParams<double> before = p;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(8);
  b.tail(4) << 0.5, 0.3, 0.2, 0.9;
  Rng rng(4);
  ReplayBuffer rb;
  for (int e = 0; e < 8; ++e) {
    Eigen::VectorXd R(5);
    for (Index t = 0; t < 5; ++t) R[t] = standard_normal(rng);
    rb.push(constant_trace(b, premotor_step(b, p), 5, sample_perturbation(p, topo, rng), R));
  }
  LearnConfig cfg;
  const auto adv = compute_advantages(rb, p.w_val, cfg.H);
  const ParamDelta d = update_primary(p, rb, adv, cfg);
  apply_primary(p, d, cfg);
  CHECK(std::memcmp(p.W_mot.data(), before.W_mot.data(), 4 * 2 * sizeof(double)) == 0);
  CHECK(std::memcmp(p.sigma_mot.data(), before.sigma_mot.data(), 4 * 2 * sizeof(double)) == 0);
  CHECK((p.W_mot.rightCols(4) - before.W_mot.rightCols(4)).cwiseAbs().maxCoeff() > 0);
  CHECK(p.sigma_mot.minCoeff() >= cfg.sigma_min);
  CHECK(p.sigma_mot.maxCoeff() <= cfg.sigma_max);
}

TEST_CASE("single positive sample moves toward the offset") {
  const Topology topo = make_ring_topology(21, 2);
  auto p = make_learnable_params<double>(topo);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(4);
  b[1] = 0.8;
  Perturbation good = zero_offset(2, 4), bad = zero_offset(2, 4);
  good.mot << 0.01, -0.02, 0.03, 0.04, -0.01, 0.02, -0.03, 0.05;
  bad.mot = -good.mot;
  ReplayBuffer rb;
  rb.push(constant_trace(b, b, 1, good, Eigen::VectorXd::Constant(1, 1.0)));
  rb.push(constant_trace(b, b, 1, bad, Eigen::VectorXd::Constant(1, 0.0)));
  LearnConfig cfg;
  for (auto scaling : {UpdateScaling::kNatural, UpdateScaling::kLiteral}) {
    cfg.scaling = scaling;
    const auto d = update_primary(p, rb, compute_advantages(rb, p.w_val, cfg.H), cfg);
    for (Index j = 0; j < 2; ++j) {
      CHECK(d.weights(j, 1) * good.mot(j, 1) > 0);
      CHECK(d.weights(j, 0) == 0.0);
    }
  }
}

TEST_CASE("zero advantage gives zero update") {
  const Topology topo = make_ring_topology(21, 2);
  const auto p = make_learnable_params<double>(topo);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(4, 0.5);
  Rng rng(1);
  ReplayBuffer rb;
  rb.push(constant_trace(b, b, 3, sample_perturbation(p, topo, rng), Eigen::VectorXd::Constant(3, 2.0)));
  LearnConfig cfg;
  const auto d = update_primary(p, rb, compute_advantages(rb, p.w_val, cfg.H), cfg);
  CHECK(d.weights.isZero());
}

TEST_CASE("expected update climbs a quadratic bandit") {
  // One weight, reward -(w' - w*)^2, one step per episode.
  const Topology topo = make_ring_topology(1, 1);
  auto p = make_learnable_params<double>(topo, 0.05);
  p.W_mot(0, 0) = 0.3;
  const double target = 0.1;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(4);
  b[0] = 1;
  LearnConfig cfg;
  Rng rng(2024);
  double total = 0;
  for (int batch = 0; batch < 1250; ++batch) {
    ReplayBuffer rb(8);
    for (int e = 0; e < 8; ++e) {
      Perturbation off = sample_perturbation(p, topo, rng);
      const double w = p.W_mot(0, 0) + off.mot(0, 0);
      rb.push(constant_trace(b, b, 1, off, Eigen::VectorXd::Constant(1, -(w - target) * (w - target))));
    }
    total += update_primary(p, rb, compute_advantages(rb, p.w_val, cfg.H), cfg).weights(0, 0);
  }
  const double true_grad = -2 * (p.W_mot(0, 0) - target);
  CHECK(total * true_grad > 0);
}

TEST_CASE("supplementary update follows the expected-return slope") {
  // Two subnetworks, one action. The cross weight W_sup(0, 4) mixes basis 4
  // into pattern 0. Reward -(m - target)^2 with m = W_mot W_sup b.
  const Topology topo = make_chain_topology(2, 1, 1);
  auto p = make_learnable_params<double>(topo, 0.05);
  p.W_mot(0, 0) = 1.0;
  p.W_mot(0, 4) = 0.5;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(8);
  b[0] = 1.0;
  b[4] = 1.0;
  const double target = 2.0;
  auto reward = [&](const LearnableParams<double>& q) {
    const double m = output_step(premotor_step(b, q), b, q).m[0];
    return -(m - target) * (m - target);
  };
  // Expected return as a function of W_sup(0,4); zero-mean noise on the other
  // entries only adds a constant, so a central difference of the noise-free
  // reward is its slope.
  const double h = 1e-6;
  auto up = p, dn = p;
  up.W_sup(0, 4) += h;
  dn.W_sup(0, 4) -= h;
  const double slope = (reward(up) - reward(dn)) / (2 * h);
  REQUIRE(slope > 0);

  LearnConfig cfg;
  Rng rng(77);
  double total = 0;
  for (int batch = 0; batch < 1250; ++batch) {
    ReplayBuffer rb(8);
    for (int e = 0; e < 8; ++e) {
      Perturbation off = sample_perturbation(p, topo, rng);
      const auto q = apply_perturbation(p, off);
      rb.push(constant_trace(b, premotor_step(b, q), 1, off, Eigen::VectorXd::Constant(1, reward(q))));
    }
    total += update_supplementary(p, topo, rb, compute_advantages(rb, p.w_val, cfg.H), cfg).weights(0, 4);
  }
  CHECK(total > 0);

  // One good and one bad sample that differ only in the cross weight.
  Perturbation plus{Eigen::MatrixXd::Zero(1, 8), Eigen::MatrixXd::Zero(8, 8)}, minus = plus;
  plus.sup(0, 4) = 0.04;
  minus.sup(0, 4) = -0.04;
  ReplayBuffer rb;
  rb.push(constant_trace(b, b, 1, plus, Eigen::VectorXd::Constant(1, reward(apply_perturbation(p, plus)))));
  rb.push(constant_trace(b, b, 1, minus, Eigen::VectorXd::Constant(1, reward(apply_perturbation(p, minus)))));
  const auto d = update_supplementary(p, topo, rb, compute_advantages(rb, p.w_val, cfg.H), cfg);
  CHECK(d.weights(0, 4) > 0);
  CHECK(d.weights(0, 4) <= 0.04 * cfg.eta + 1e-12);
  apply_supplementary(p, d, cfg);
  CHECK(p.W_sup.diagonal().isOnes());
}

TEST_CASE("silent basis leaves its supplementary column untouched") {
  const Topology topo = make_chain_topology(2, 1, 1);
  auto p = make_learnable_params<double>(topo);
  p.W_mot.setConstant(0.7);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(8);
  b[0] = 1;
  Rng rng(8);
  ReplayBuffer rb;
  for (int e = 0; e < 4; ++e) {
    Eigen::VectorXd R(2);
    R << standard_normal(rng), standard_normal(rng);
    rb.push(constant_trace(b, b, 2, sample_perturbation(p, topo, rng), R));
  }
  LearnConfig cfg;
  const auto d = update_supplementary(p, topo, rb, compute_advantages(rb, p.w_val, cfg.H), cfg);
  for (Index k = 4; k < 8; ++k) CHECK(d.weights.col(k).isZero());
  CHECK(d.weights.col(0).cwiseAbs().maxCoeff() > 0);
}

TEST_CASE("empty replay is rejected") {
  const Topology topo = make_ring_topology(21, 2);
  const auto p = make_learnable_params<double>(topo);
  ReplayBuffer rb;
  CHECK_THROWS_AS(update_primary(p, rb, {}, LearnConfig{}), PreconditionError);
}
