#include "zen/rsi_approx.hpp"

#include "zen/error.hpp"
#include "zen/rng.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace zen {

void WalkParams::validate() const {
  if (walk_length < 1) throw ConfigError("walk length must be >= 1");
  if (trials < 1) throw ConfigError("random walk needs at least one trial");
}

void HutchinsonParams::validate() const {
  if (num_probes < 1) throw ConfigError("Hutchinson estimator needs at least one probe");
}

double random_walk_return_prob(const Hypergraph& hg, NodeId node, const WalkParams& params,
                               int threads) {
  params.validate();
  if (node < 0 || node >= hg.num_nodes()) throw ConfigError("node id out of range");
  if (hg.node_degree(node) == 0) {
    throw ConfigError("node " + std::to_string(node) + " is isolated; no incident hyperedge to sample");
  }
  const CounterRng root(params.rng_seed);
  auto run = [&](std::int64_t begin, std::int64_t end) {
    std::int64_t hits = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      CounterRng rng = root.split(static_cast<std::uint64_t>(t));
      NodeId current = node;
      for (int step = 0; step < params.walk_length; ++step) {
        const auto edges = hg.incident(current);
        const EdgeId e = edges[rng.below(edges.size())];
        const auto members = hg.edge(e);
        current = members[rng.below(members.size())];
      }
      if (current == node) ++hits;
    }
    return hits;
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::int64_t>(params.trials, 64))));
  std::int64_t hits = 0;
  if (workers == 1) {
    hits = run(0, params.trials);
  } else {
    std::vector<std::int64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> pool;
    const std::int64_t chunk = (params.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t b = std::min(params.trials, w * chunk);
      const std::int64_t e = std::min(params.trials, b + chunk);
      pool.emplace_back([&, w, b, e] { partial[static_cast<std::size_t>(w)] = run(b, e); });
    }
    for (auto& th : pool) th.join();
    for (auto p : partial) hits += p;
  }
  return static_cast<double>(hits) / static_cast<double>(params.trials);
}

Eigen::VectorXd hutchinson_diag(const Matvec& matvec, std::int64_t n, const HutchinsonParams& params) {
  params.validate();
  if (n < 0) throw ConfigError("dimension must be nonnegative");
  CounterRng rng(params.rng_seed);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z(n);
  for (std::int64_t k = 0; k < params.num_probes; ++k) {
    for (std::int64_t i = 0; i < n; ++i) z[i] = rng.rademacher();
    const Eigen::VectorXd az = matvec(z);
    if (az.size() != n) throw ConfigError("matvec returned a vector of the wrong length");
    acc += z.cwiseProduct(az);
  }
  return acc / static_cast<double>(params.num_probes);
}

std::string to_string(DiagTarget target) {
  return target == DiagTarget::RapHat ? "rap_hat" : "walk_matrix";
}

std::int64_t dense_guard() {
  if (const char* env = std::getenv("ZEN_DENSE_GUARD")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 2000;
}

namespace {

double clamp_inv_minus_one(double x) { return x > 1.0 ? 1.0 / (x - 1.0) : 0.0; }
double clamp_inv(double x) { return x > 0.0 ? 1.0 / x : 0.0; }

}  // namespace

Eigen::MatrixXd dense_hop_matrix(const Hypergraph& hg, NormalizationKind kind, int l, DiagTarget target) {
  const std::int64_t n = hg.num_nodes();
  if (n > dense_guard()) {
    throw GuardError("dense oracle refused: " + std::to_string(n) + " nodes exceeds guard " +
                     std::to_string(dense_guard()) + " (set ZEN_DENSE_GUARD to override)");
  }
  if (l < 0) throw ConfigError("hop count must be nonnegative");
  if (l == 0) return Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, hg.num_edges());
  for (EdgeId e = 0; e < hg.num_edges(); ++e) {
    for (NodeId v : hg.edge(e)) h(v, e) = 1.0;
  }
  const Eigen::VectorXd dv = h.rowwise().sum();
  const Eigen::VectorXd de = h.colwise().sum().transpose();

  if (target == DiagTarget::WalkMatrix) {
    const Eigen::VectorXd inv_dv = dv.unaryExpr(&clamp_inv);
    const Eigen::VectorXd inv_de = de.unaryExpr(&clamp_inv);
    const Eigen::MatrixXd step = inv_dv.asDiagonal() * h * inv_de.asDiagonal() * h.transpose();
    Eigen::MatrixXd out = step;
    for (int i = 1; i < l; ++i) out = out * step;
    return out;
  }

  if (l > 2) throw ConfigError("redundancy-aware hop matrices are defined for l <= 2");
  const Eigen::VectorXd w = de.unaryExpr(&clamp_inv_minus_one);
  Eigen::VectorXd left, right;
  if (kind == NormalizationKind::Symmetric) {
    left = dv.unaryExpr([](double d) { return d > 0.0 ? 1.0 / std::sqrt(d) : 0.0; });
    right = left;
  } else {
    left = dv.unaryExpr(&clamp_inv);
    right = Eigen::VectorXd::Ones(n);
  }
  const Eigen::MatrixXd a1 = left.asDiagonal() * h * w.asDiagonal() * h.transpose() * right.asDiagonal();
  if (l == 1) return a1;
  Eigen::MatrixXd a1_star = a1;
  a1_star.diagonal().setZero();
  const Eigen::VectorXd middle = dv.unaryExpr([](double d) { return d * clamp_inv_minus_one(d); });
  return a1_star * middle.asDiagonal() * a1_star;
}

Eigen::VectorXd dense_diag_oracle(const Hypergraph& hg, NormalizationKind kind, int l, DiagTarget target) {
  return dense_hop_matrix(hg, kind, l, target).diagonal();
}

}  // namespace zen
