#include "ringnet/demonstration.hpp"

#include "ringnet/dtw.hpp"
#include "ringnet/rng.hpp"

#include <Eigen/QR>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace ringnet {

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    std::size_t a = pos, b = comma;
    while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
    double v = 0;
    const auto res = std::from_chars(line.data() + a, line.data() + b, v);
    if (a == b || res.ec != std::errc() || res.ptr != line.data() + b) return false;
    out.push_back(v);
    pos = comma + 1;
  }
  return true;
}

}  // namespace

Demonstration load_demonstration_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open demonstration " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<double> vals;
  bool first = true;
  Index lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!parse_row(line, vals)) {
      if (first) {
        first = false;
        continue;
      }
      throw PreconditionError("non-numeric value on line " + std::to_string(lineno) + " of " + path.string());
    }
    first = false;
    if (!rows.empty() && vals.size() != rows.front().size())
      throw PreconditionError("line " + std::to_string(lineno) + " has a different column count");
    for (double v : vals)
      if (!std::isfinite(v)) throw PreconditionError("non-finite sample on line " + std::to_string(lineno));
    rows.push_back(vals);
  }
  if (rows.empty()) throw PreconditionError("demonstration " + path.string() + " has no samples");
  Demonstration d;
  d.samples.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < d.samples.rows(); ++r)
    for (Index c = 0; c < d.samples.cols(); ++c) d.samples(r, c) = rows[r][c];
  return d;
}

DemoRing make_demo_ring(Index size, Index n_actions, double tau, const BoundaryParams& bp) {
  if (size < 3) throw PreconditionError("a ring needs at least 3 neurons");
  DemoRing r;
  r.topo = make_ring_topology(1, n_actions, tau, size);
  r.fixed = build_fixed_weights<double>(r.topo, bp, RingRule::kAtLeastThree);
  r.params = make_learnable_params<double>(r.topo);
  return r;
}

NetworkState<double> steady_start(const DemoRing& ring) {
  NetworkState<double> s = initial_state(ring.topo, ring.params, 0);
  const Eigen::VectorXd fb = Eigen::VectorXd::Zero(ring.topo.n_fb);
  bool left = false;
  for (Index t = 0; t < 200 * ring.topo.n_c(); ++t) {
    s = network_forward(s, fb, ring.topo, ring.fixed, ring.params);
    const Index d = dominant(s.c);
    if (d != 0) left = true;
    if (left && d == 0) return s;
  }
  throw DegenerateParamsError("ring does not cycle");
}

Rollout roll(const DemoRing& ring, Index steps) {
  const Index n = ring.topo.n_c();
  Rollout out;
  out.m.resize(steps, ring.topo.n_actions);
  out.b.resize(steps, n);
  out.c.resize(steps, n);
  out.dominant.resize(steps);
  NetworkState<double> s = steady_start(ring);
  const Eigen::VectorXd fb = Eigen::VectorXd::Zero(ring.topo.n_fb);
  for (Index t = 0; t < steps; ++t) {
    s = network_forward(s, fb, ring.topo, ring.fixed, ring.params);
    out.m.row(t) = s.m.transpose();
    out.b.row(t) = s.b.transpose();
    out.c.row(t) = s.c.transpose();
    out.dominant[t] = dominant(s.c);
  }
  return out;
}

WindowFit fit_window(const Eigen::MatrixXd& segment, DemoRing& ring) {
  const Index n = ring.topo.n_c();
  if (segment.rows() < n) throw PreconditionError("segment is shorter than the ring");
  require_size(segment.cols(), ring.topo.n_actions, "fit_window segment");
  const Rollout r = roll(ring, segment.rows());
  std::vector<Index> active;
  for (Index k = 0; k < n; ++k)
    if (r.b.col(k).maxCoeff() > 1e-2) active.push_back(k);
  if (active.empty()) throw RankDeficientError("no basis is active in the window");
  Eigen::MatrixXd P(segment.rows(), static_cast<Index>(active.size()));
  for (std::size_t k = 0; k < active.size(); ++k) P.col(static_cast<Index>(k)) = r.b.col(active[k]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(P);
  if (qr.rank() < P.cols()) throw RankDeficientError("basis matrix is rank deficient");
  const Eigen::MatrixXd X = qr.solve(segment);

  WindowFit fit;
  fit.W_mot = Eigen::MatrixXd::Zero(ring.topo.n_actions, n);
  for (std::size_t k = 0; k < active.size(); ++k) fit.W_mot.col(active[k]) = X.row(static_cast<Index>(k)).transpose();
  ring.params.W_mot = fit.W_mot;
  fit.generated = r.b * fit.W_mot.transpose();
  fit.error = dtw_distance(fit.generated, segment);
  return fit;
}

std::optional<std::vector<Index>> ring_order(const BoolMat& t) {
  const Index n = t.rows();
  if (t.cols() != n) return std::nullopt;
  std::vector<Index> succ(n, -1);
  Index start = -1, involved = 0;
  for (Index i = 0; i < n; ++i) {
    const Index out = t.row(i).count(), in = t.col(i).count();
    if (t(i, i)) return std::nullopt;
    if (out == 0 && in == 0) continue;
    if (out != 1 || in != 1) return std::nullopt;
    for (Index k = 0; k < n; ++k)
      if (t(i, k)) succ[i] = k;
    if (start < 0) start = i;
    ++involved;
  }
  if (involved < 3) return std::nullopt;
  std::vector<Index> order{start};
  for (Index cur = succ[start]; cur != start; cur = succ[cur]) {
    order.push_back(cur);
    if (static_cast<Index>(order.size()) > involved) return std::nullopt;
  }
  if (static_cast<Index>(order.size()) != involved) return std::nullopt;
  return order;
}

namespace {

BoolMat binarize(const Eigen::MatrixXd& t_bar) { return (t_bar.array() >= 0.5).matrix(); }

DemoRing ring_with_weights(const std::vector<Eigen::VectorXd>& cols, Index n_actions, const DemoOptions& o) {
  DemoRing r = make_demo_ring(static_cast<Index>(cols.size()), n_actions, o.tau, o.boundary);
  for (std::size_t k = 0; k < cols.size(); ++k) r.params.W_mot.col(static_cast<Index>(k)) = cols[k];
  return r;
}

struct WindowOutcome {
  WindowFit fit;
  Rollout rollout;
  std::vector<Index> order;  // original neuron index for each ring position
};

// Relaxed structure search over one window, starting from a one-loop ring.
WindowOutcome optimize_window(const Eigen::MatrixXd& seg, const DemoOptions& o, Rng& rng) {
  const Index N0 = o.ring_size, na = seg.cols();
  Eigen::MatrixXd t_bar = Eigen::MatrixXd::Zero(N0, N0);
  for (Index i = 0; i < N0; ++i) t_bar(i, (i + 1) % N0) = 1.0;
  std::vector<Index> current = *ring_order(binarize(t_bar));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (Index it = 0; it < o.max_iter; ++it) {
    // Relevance of each row: time-mean activation of its neuron in the current ring.
    DemoRing base = make_demo_ring(static_cast<Index>(current.size()), na, o.tau, o.boundary);
    const Rollout br = roll(base, seg.rows());
    Eigen::VectorXd rel = Eigen::VectorXd::Zero(N0);
    for (std::size_t k = 0; k < current.size(); ++k) rel[current[k]] = br.c.col(static_cast<Index>(k)).mean();

    Eigen::MatrixXd cand = t_bar;
    for (Index i = 0; i < N0; ++i)
      for (Index j = 0; j < N0; ++j) {
        if (i == j) continue;
        if (unit(rng) < o.flip_prob) cand(i, j) = unit(rng) < 0.5 ? 0.0 : 1.0;
        cand(i, j) = std::clamp(cand(i, j) + o.jitter * standard_normal(rng), 0.0, 1.0);
      }
    const BoolMat tp = binarize(cand);
    const auto order = ring_order(tp);
    if (!order) continue;
    const double shrink = std::clamp(double(binarize(t_bar).count() - tp.count()), 0.0, 1.0);
    if (shrink == 0.0) continue;
    DemoRing ring = make_demo_ring(static_cast<Index>(order->size()), na, o.tau, o.boundary);
    double err = 0;
    try {
      err = fit_window(seg, ring).error;
    } catch (const RankDeficientError&) {
      continue;
    }
    if (err > o.tol) continue;
    const double adv = (o.tol - err) * shrink;
    const Eigen::MatrixXd tpd = tp.cast<double>();
    t_bar += (rel.cwiseAbs().asDiagonal() * (tpd - t_bar)) * adv;
    t_bar = t_bar.cwiseMax(0.0).cwiseMin(1.0);
    t_bar.diagonal().setZero();
    if (auto next = ring_order(binarize(t_bar))) current = *next;
  }

  WindowOutcome out;
  out.order = current;
  DemoRing ring = make_demo_ring(static_cast<Index>(current.size()), na, o.tau, o.boundary);
  out.fit = fit_window(seg, ring);
  out.rollout = roll(ring, seg.rows());
  return out;
}

}  // namespace

DemoResult program_from_demonstration(const Demonstration& demo, const DemoOptions& o) {
  const Index T = demo.length(), na = demo.n_actions();
  if (o.window < 1 || o.window > T) throw PreconditionError("window must lie in [1, demonstration length]");
  if (o.max_iter < 1) throw PreconditionError("max_iter must be at least 1");
  if (o.ring_size < 3) throw PreconditionError("ring size must be at least 3");
  if (!demo.samples.allFinite()) throw PreconditionError("demonstration has non-finite samples");

  Rng rng(o.seed);
  DemoResult res;
  std::vector<Eigen::VectorXd> cols;
  const Index half = std::max<Index>(1, o.window / 2);
  for (Index t = 0; t + o.window <= T; t += half) {
    const Eigen::MatrixXd seg = demo.samples.middleRows(t, o.window);
    WindowRecord rec;
    rec.t = t;
    rec.replay_error = std::numeric_limits<double>::infinity();
    if (cols.size() >= 3) {
      const Rollout rep = roll(ring_with_weights(cols, na, o), t + o.window);
      rec.replay_error = dtw_distance(rep.m.bottomRows(o.window), seg);
    }
    if (rec.replay_error < o.tol) {
      rec.skipped = true;
      res.windows.push_back(rec);
      continue;
    }
    const WindowOutcome w = optimize_window(seg, o, rng);
    rec.fit_error = w.fit.error;
    rec.ring_size = static_cast<Index>(w.order.size());
    // The last window keeps everything; others keep their first half.
    const bool last = t + half + o.window > T;
    const Index keep = last ? o.window : half;
    std::vector<Index> seen;
    for (Index s = 0; s < keep; ++s) {
      const Index d = w.rollout.dominant[s];
      if (std::find(seen.begin(), seen.end(), d) == seen.end()) seen.push_back(d);
    }
    for (Index d : seen) cols.push_back(w.fit.W_mot.col(d));
    rec.appended = static_cast<Index>(seen.size());
    res.windows.push_back(rec);
  }
  if (cols.size() < 3) throw PreconditionError("demonstration is too short to form a ring of at least 3 neurons");

  res.ring = ring_with_weights(cols, na, o);
  res.replay = roll(res.ring, T).m;
  res.final_error = dtw_distance(res.replay, demo.samples);
  return res;
}

}  // namespace ringnet
