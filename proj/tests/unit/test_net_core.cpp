#include "ringnet/synthesis.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ringnet;

namespace {

struct Ring {
  Topology topo = make_ring_topology(21, 18, 0.08);
  FixedWeights<double> fixed = build_fixed_weights<double>(topo);
  LearnableParams<double> params = make_learnable_params<double>(topo);
};

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TEST_CASE("ip1") {
  Ring r;
  const Eigen::VectorXd fb = Eigen::VectorXd::Random(21);
  CHECK(ip1_step(fb, r.params).isConstant(0.5));
  r.params.W_cls(2, 0) = 4;
  r.params.b_cls[2] = -2;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(21);
  e[0] = 1;
  CHECK(ip1_step(e, r.params)[2] == doctest::Approx(0.8807970779778823));
  CHECK_THROWS_AS(ip1_step(Eigen::VectorXd::Zero(20), r.params), StructuralError);
}

TEST_CASE("ip2 gate") {
  const Topology topo = make_chain_topology(2, 21, 18);
  const auto fw = build_fixed_weights<double>(topo);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(8);
  CHECK(ip2_step(z, z, z, fw, topo.tau).isZero());
  Eigen::VectorXd c = z;
  c[0] = 1;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(8);
  const Eigen::VectorXd open = ip2_step(z, ones, c, fw, topo.tau);
  CHECK(open[4] == doctest::Approx(0.08));
  CHECK(open[1] == doctest::Approx(0.08));
  for (Index i : {0, 2, 3, 5, 6, 7}) CHECK(open[i] == 0.0);
  CHECK(ip2_step(z, ones, z, fw, topo.tau).isZero());
}

TEST_CASE("cpg scalar cases with the rounded constants") {
  const Topology topo = make_ring_topology(21, 18, 0.08);
  const auto fw = build_fixed_weights<double>(topo, CParams{7, 20, -26, 7, -13});
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd c = z;
  c[1] = 0.95;
  CHECK(cpg_step(c, z, z, fw)[1] == doctest::Approx(sig(6.0)));
  c[2] = 0.95;
  CHECK(cpg_step(c, z, z, fw)[1] == doctest::Approx(sig(-18.7)));
  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(4), b2 = z;
  c2[0] = 0.95;
  b2[0] = 0.95;
  c2[1] = 0.01;
  CHECK(cpg_step(c2, b2, z, fw)[1] == doctest::Approx(sig(0.5)));
}

TEST_CASE("basis recurrence") {
  Ring r;
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(4);
  CHECK(basis_step(z, z, r.fixed).isZero());
  // One neuron held on: neighbors only see negative drive and stay clipped at 0.
  Eigen::VectorXd c = z, b = z;
  c[2] = 1;
  b = basis_step(b, c, r.fixed);
  CHECK(b[2] == doctest::Approx(0.08));
  for (int k = 1; k < 20; ++k) b = basis_step(b, c, r.fixed);
  CHECK(b[2] == doctest::Approx(1 - std::pow(0.92, 20)));
  CHECK(b[2] == doctest::Approx(0.8113).epsilon(1e-4));
}

TEST_CASE("premotor and outputs") {
  const Topology topo = make_chain_topology(2, 21, 18);
  auto p = make_learnable_params<double>(topo);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(8);
  b[3] = 1;
  CHECK(premotor_step(b, p) == b);
  p.W_sup(1, 5) = 0.2;
  b.setZero();
  b[5] = 1;
  const Eigen::VectorXd pm = premotor_step(b, p);
  CHECK(pm[1] == doctest::Approx(0.2));
  CHECK(pm[5] == 1.0);

  const Eigen::VectorXd z = Eigen::VectorXd::Zero(8);
  Outputs<double> out = output_step(z, z, p);
  CHECK(out.m.isZero());
  CHECK(out.v == 0.0);
  CHECK(out.vdev == doctest::Approx(0.02));
  CHECK(out.odev.isConstant(0.02));

  p.W_mot(0, 3) = -0.8;
  Eigen::VectorXd pm4 = z;
  pm4[3] = 1;
  CHECK(output_step(pm4, z, p).m[0] == doctest::Approx(-0.8));

  Eigen::VectorXd bb = z;
  bb.head(3) << 0.3, 0.4, 0.2;
  CHECK(output_step(z, bb, p).vdev == doctest::Approx(0.9));
}

TEST_CASE("forward agrees with a scalar re-implementation") {
  Ring r;
  const auto& fw = r.fixed;
  const Eigen::MatrixXd cc(fw.W_CC), cb(fw.W_CB), bc(fw.W_BC);
  std::vector<double> c(4, 0.01), b(4, 0.0);
  c[0] = 0.95;
  auto s = initial_state(r.topo, r.params);
  const Eigen::VectorXd fb = Eigen::VectorXd::Zero(21);
  std::vector<Index> order;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> nc(4), nb(4);
    for (int i = 0; i < 4; ++i) {
      double pc = fw.b_C[i], pb = fw.w_BB[i] * b[i];
      for (int k = 0; k < 4; ++k) {
        pc += cc(i, k) * c[k] + cb(i, k) * b[k];
        pb += bc(i, k) * c[k];
      }
      nc[i] = sig(pc);
      nb[i] = std::max(0.0, pb);
    }
    c = nc;
    b = nb;
    s = network_forward(s, fb, r.topo, r.fixed, r.params);
    for (int i = 0; i < 4; ++i) {
      REQUIRE(s.c[i] == doctest::Approx(c[i]).epsilon(1e-12));
      REQUIRE(s.b[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
    CHECK(s.m.isZero());
    const Index d = dominant(s.c);
    if (order.empty() || order.back() != d) order.push_back(d);
  }
  REQUIRE(order.size() > 8);
  for (std::size_t k = 1; k < order.size(); ++k) CHECK(order[k] == (order[k - 1] + 1) % 4);
}

TEST_CASE("forward is pure and deterministic") {
  Ring r;
  r.params.W_mot.setRandom();
  const auto s0 = initial_state(r.topo, r.params);
  const Eigen::VectorXd fb = Eigen::VectorXd::LinSpaced(21, -1, 1);
  auto a = s0, b = s0;
  for (int t = 0; t < 100; ++t) {
    a = network_forward(a, fb, r.topo, r.fixed, r.params);
    b = network_forward(b, fb, r.topo, r.fixed, r.params);
    REQUIRE(a.c == b.c);
    REQUIRE(a.m == b.m);
  }
}

TEST_CASE("gate soundness over a rollout") {
  const Topology topo = make_chain_topology(2, 21, 18);
  const auto fw = build_fixed_weights<double>(topo);
  auto p = make_learnable_params<double>(topo);
  p.b_cls.setConstant(3.0);
  auto s = initial_state(topo, p);
  const Eigen::VectorXd fb = Eigen::VectorXd::Zero(21);
  for (int t = 0; t < 300; ++t) {
    s = network_forward(s, fb, topo, fw, p);
    for (Index i = 0; i < 8; ++i)
      if (!topo.feedback_dependent(i)) REQUIRE(s.ip2[i] == 0.0);
  }
}

TEST_CASE("single precision instantiation") {
  const Topology topo = make_ring_topology(21, 18, 0.08);
  const auto fw = build_fixed_weights<float>(topo);
  const auto p = make_learnable_params<float>(topo);
  auto s = initial_state(topo, p);
  const Eigen::VectorXf fb = Eigen::VectorXf::Zero(21);
  std::vector<Index> order;
  for (int t = 0; t < 400; ++t) {
    s = network_forward(s, fb, topo, fw, p);
    const Index d = dominant(s.c);
    if (order.empty() || order.back() != d) order.push_back(d);
  }
  CHECK(order.size() > 8);
}

TEST_CASE("dimension mismatch") {
  Ring r;
  auto s = initial_state(r.topo, r.params);
  CHECK_THROWS_AS(network_forward(s, Eigen::VectorXd::Zero(5), r.topo, r.fixed, r.params), StructuralError);
  s.c.resize(3);
  CHECK_THROWS_AS(network_forward(s, Eigen::VectorXd::Zero(21), r.topo, r.fixed, r.params), StructuralError);
}
