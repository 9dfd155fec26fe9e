#include "zen/propagation.hpp"

#include "zen/error.hpp"

#include <cmath>
#include <sstream>

namespace zen {

std::string to_string(NormalizationKind kind) {
  return kind == NormalizationKind::Symmetric ? "sym" : "row";
}

NormalizationKind parse_normalization(const std::string& name) {
  if (name == "sym" || name == "symmetric") return NormalizationKind::Symmetric;
  if (name == "row") return NormalizationKind::Row;
  throw ConfigError("unknown normalization '" + name + "' (expected sym or row)");
}

void PropagationConfig::validate() const {
  double sum = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw ConfigError("propagation coefficients must be finite and nonnegative");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "propagation coefficients must sum to 1 (got " << sum << ")";
    throw ConfigError(msg.str());
  }
}

namespace {

// 1 / (x - 1) with the degenerate rule: 0 when x <= 1.
double inv_minus_one(std::int64_t x) { return x > 1 ? 1.0 / static_cast<double>(x - 1) : 0.0; }
double inv(double x) { return x > 0.0 ? 1.0 / x : 0.0; }

std::vector<double> node_scale(const Hypergraph& hg, double exponent) {
  std::vector<double> s(static_cast<std::size_t>(hg.num_nodes()), 0.0);
  for (NodeId v = 0; v < hg.num_nodes(); ++v) {
    const auto d = static_cast<double>(hg.node_degree(v));
    s[static_cast<std::size_t>(v)] = d > 0.0 ? std::pow(d, exponent) : 0.0;
  }
  return s;
}

// diag(left) H diag(edge_weight) H^T diag(right) as a product of sparse factors.
SparseMatrix expand(const Hypergraph& hg, std::span<const double> left,
                    std::span<const double> edge_weight, std::span<const double> right) {
  const SparseMatrix h = incidence_matrix(hg);
  const SparseMatrix left_factor = h.scaled(left, edge_weight);
  const SparseMatrix right_factor = h.scaled(right, {}).transpose();
  return left_factor * right_factor;
}

}  // namespace

SparseMatrix build_A1_hat(const Hypergraph& hg, NormalizationKind kind) {
  std::vector<double> edge_weight(static_cast<std::size_t>(hg.num_edges()));
  for (EdgeId e = 0; e < hg.num_edges(); ++e) {
    edge_weight[static_cast<std::size_t>(e)] = inv_minus_one(hg.edge_size(e));
  }
  if (kind == NormalizationKind::Symmetric) {
    const auto s = node_scale(hg, -0.5);
    SparseMatrix a = expand(hg, s, edge_weight, s);
    a.mark_symmetric();
    return a;
  }
  const auto s = node_scale(hg, -1.0);
  return expand(hg, s, edge_weight, {});
}

std::vector<double> rsi_diag_1(const Hypergraph& hg, NormalizationKind /*kind*/) {
  std::vector<double> d(static_cast<std::size_t>(hg.num_nodes()), 0.0);
  for (NodeId v = 0; v < hg.num_nodes(); ++v) {
    const auto deg = hg.node_degree(v);
    if (deg == 0) continue;
    double sum = 0.0;
    for (EdgeId e : hg.incident(v)) sum += inv_minus_one(hg.edge_size(e));
    d[static_cast<std::size_t>(v)] = sum / static_cast<double>(deg);
  }
  return d;
}

SparseMatrix build_A1_star(const Hypergraph& hg, NormalizationKind kind) {
  return build_A1_hat(hg, kind).without_diagonal();
}

std::vector<double> two_hop_middle_factor(const Hypergraph& hg, NormalizationKind /*kind*/) {
  std::vector<double> m(static_cast<std::size_t>(hg.num_nodes()), 0.0);
  for (NodeId v = 0; v < hg.num_nodes(); ++v) {
    const auto d = hg.node_degree(v);
    m[static_cast<std::size_t>(v)] = static_cast<double>(d) * inv_minus_one(d);
  }
  return m;
}

SparseMatrix build_A2_hat(const Hypergraph& hg, NormalizationKind kind, const SparseMatrix& A1_star) {
  if (A1_star.rows() != hg.num_nodes() || A1_star.cols() != hg.num_nodes()) {
    throw ConfigError("build_A2_hat: A1* shape does not match the hypergraph");
  }
  const auto middle = two_hop_middle_factor(hg, kind);
  SparseMatrix a2 = A1_star.scaled({}, middle) * A1_star;
  if (kind == NormalizationKind::Symmetric) a2.mark_symmetric();
  return a2;
}

std::vector<double> rsi_diag_2(const Hypergraph& hg, NormalizationKind /*kind*/) {
  const auto n = static_cast<std::size_t>(hg.num_nodes());
  std::vector<double> out(n, 0.0);
  std::vector<double> shared(n, 0.0);  // s_ik for the current i
  std::vector<NodeId> touched;
  for (NodeId i = 0; i < hg.num_nodes(); ++i) {
    const auto di = hg.node_degree(i);
    if (di == 0) continue;
    touched.clear();
    for (EdgeId e : hg.incident(i)) {
      const double w = inv_minus_one(hg.edge_size(e));
      if (w == 0.0) continue;
      for (NodeId k : hg.edge(e)) {
        if (k == i) continue;
        if (shared[static_cast<std::size_t>(k)] == 0.0) touched.push_back(k);
        shared[static_cast<std::size_t>(k)] += w;
      }
    }
    double sum = 0.0;
    for (NodeId k : touched) {
      const double s = shared[static_cast<std::size_t>(k)];
      sum += s * s * inv_minus_one(hg.node_degree(k));
      shared[static_cast<std::size_t>(k)] = 0.0;
    }
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(di);
  }
  return out;
}

std::vector<double> rsi_diag_2_per_edge(const Hypergraph& hg) {
  std::vector<double> out(static_cast<std::size_t>(hg.num_nodes()), 0.0);
  for (NodeId i = 0; i < hg.num_nodes(); ++i) {
    const auto di = hg.node_degree(i);
    if (di == 0) continue;
    double sum = 0.0;
    for (EdgeId e : hg.incident(i)) {
      const double w = inv_minus_one(hg.edge_size(e));
      double inner = 0.0;
      for (NodeId k : hg.edge(e)) {
        if (k != i) inner += inv_minus_one(hg.node_degree(k));
      }
      sum += w * w * inner;
    }
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(di);
  }
  return out;
}

SparseMatrix build_A2_star(const Hypergraph& hg, NormalizationKind kind, const SparseMatrix& A1_star) {
  const SparseMatrix a2 = build_A2_hat(hg, kind, A1_star);
#ifndef NDEBUG
  const auto closed = rsi_diag_2(hg, kind);
  const auto actual = a2.diagonal();
  for (std::size_t i = 0; i < closed.size(); ++i) {
    if (std::abs(closed[i] - actual[i]) > 1e-10) {
      throw ComputationError("2-hop self-information closed form disagrees with diag(A2) at node " +
                             std::to_string(i));
    }
  }
#endif
  return a2.without_diagonal();
}

PropagationBasis PropagationBasis::build(const Hypergraph& hg, NormalizationKind kind) {
  PropagationBasis b;
  b.kind = kind;
  b.identity = SparseMatrix::identity(hg.num_nodes());
  b.A1_hat = build_A1_hat(hg, kind);
  b.A1_star = b.A1_hat.without_diagonal();
  b.A2_hat = build_A2_hat(hg, kind, b.A1_star);
  b.A2_star = b.A2_hat.without_diagonal();
  return b;
}

std::array<const SparseMatrix*, 3> PropagationBasis::hops(bool rap_enabled) const {
  if (rap_enabled) return {&identity, &A1_star, &A2_star};
  return {&identity, &A1_hat, &A2_hat};
}

SparseMatrix PropagationBasis::compose(const PropagationConfig& config) const {
  config.validate();
  if (config.normalization != kind) throw ConfigError("propagation basis built for a different normalization");
  const auto terms = hops(config.rap_enabled);
  return weighted_sum(config.alphas, terms);
}

SparseMatrix build_P_star(const Hypergraph& hg, const PropagationConfig& config) {
  config.validate();
  return PropagationBasis::build(hg, config.normalization).compose(config);
}

// ---------------------------------------------------------------------------

std::string to_string(BaselineRecipe::Kind kind) {
  switch (kind) {
    case BaselineRecipe::Kind::HGNN: return "HGNN";
    case BaselineRecipe::Kind::HNHN: return "HNHN";
    case BaselineRecipe::Kind::UniGCNII: return "UniGCNII";
    case BaselineRecipe::Kind::AllDeepSet: return "AllDeepSet";
    case BaselineRecipe::Kind::EDHNN: return "ED-HNN";
  }
  return "?";
}

void BaselineRecipe::validate() const {
  switch (kind) {
    case Kind::HNHN:
      if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ConfigError("HNHN exponents must be finite");
      break;
    case Kind::UniGCNII:
    case Kind::EDHNN:
      if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("restart coefficient must lie in [0, 1]");
      break;
    default:
      break;
  }
}

SparseMatrix baseline_base_matrix(const Hypergraph& hg, const BaselineRecipe& recipe) {
  recipe.validate();
  const auto m = static_cast<std::size_t>(hg.num_edges());
  const auto n = static_cast<std::size_t>(hg.num_nodes());
  std::vector<double> edge_weight(m, 0.0);
  switch (recipe.kind) {
    case BaselineRecipe::Kind::HGNN: {
      for (EdgeId e = 0; e < hg.num_edges(); ++e) edge_weight[e] = inv(static_cast<double>(hg.edge_size(e)));
      const auto s = node_scale(hg, -0.5);
      SparseMatrix a = expand(hg, s, edge_weight, s);
      a.mark_symmetric();
      return a;
    }
    case BaselineRecipe::Kind::HNHN: {
      std::vector<double> node_weighted(n, 0.0);  // (Dv,a)_ii = sum_e d_e^a
      for (EdgeId e = 0; e < hg.num_edges(); ++e) {
        const double de_a = std::pow(static_cast<double>(hg.edge_size(e)), recipe.alpha);
        double de_beta = 0.0;  // (De,b)_jj = sum_v d_v^b
        for (NodeId v : hg.edge(e)) {
          node_weighted[static_cast<std::size_t>(v)] += de_a;
          de_beta += std::pow(static_cast<double>(hg.node_degree(v)), recipe.beta);
        }
        edge_weight[e] = de_a * inv(de_beta);
      }
      std::vector<double> left(n);
      for (std::size_t v = 0; v < n; ++v) left[v] = inv(node_weighted[v]);
      return expand(hg, left, edge_weight, node_scale(hg, recipe.beta));
    }
    case BaselineRecipe::Kind::UniGCNII: {
      for (EdgeId e = 0; e < hg.num_edges(); ++e) {
        double total = 0.0;
        for (NodeId v : hg.edge(e)) total += static_cast<double>(hg.node_degree(v));
        edge_weight[e] = inv(total / static_cast<double>(hg.edge_size(e)));
      }
      return expand(hg, node_scale(hg, -1.0), edge_weight, {});
    }
    case BaselineRecipe::Kind::AllDeepSet:
    case BaselineRecipe::Kind::EDHNN: {
      for (EdgeId e = 0; e < hg.num_edges(); ++e) edge_weight[e] = inv(static_cast<double>(hg.edge_size(e)));
      return expand(hg, node_scale(hg, -1.0), edge_weight, {});
    }
  }
  throw ConfigError("unknown baseline recipe");
}

SparseMatrix build_baseline_adjacency(const Hypergraph& hg, const BaselineRecipe& recipe, int l) {
  if (l < 0) throw ConfigError("hop count must be nonnegative");
  recipe.validate();
  SparseMatrix power = SparseMatrix::identity(hg.num_nodes());
  if (l == 0) return power;
  const SparseMatrix base = baseline_base_matrix(hg, recipe);
  power = base;
  for (int i = 1; i < l; ++i) power = power * base;
  if (base.symmetric()) power.mark_symmetric();
  return power;
}

std::vector<double> restart_coefficients(double alpha, int L) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("restart coefficient must lie in [0, 1]");
  if (L < 1) throw ConfigError("restart depth L must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(L) + 1);
  double tail = 1.0;
  for (int l = 0; l < L; ++l) {
    c[static_cast<std::size_t>(l)] = alpha * tail;
    tail *= 1.0 - alpha;
  }
  c[static_cast<std::size_t>(L)] = tail;
  return c;
}

SparseMatrix build_baseline_propagation(const Hypergraph& hg, const BaselineRecipe& recipe, int L) {
  const bool restart =
      recipe.kind == BaselineRecipe::Kind::UniGCNII || recipe.kind == BaselineRecipe::Kind::EDHNN;
  if (!restart) return build_baseline_adjacency(hg, recipe, L);
  const auto coeffs = restart_coefficients(recipe.alpha, L);
  const SparseMatrix base = baseline_base_matrix(hg, recipe);
  std::vector<SparseMatrix> powers;
  powers.push_back(SparseMatrix::identity(hg.num_nodes()));
  for (int l = 1; l <= L; ++l) powers.push_back(powers.back() * base);
  std::vector<const SparseMatrix*> terms;
  for (const auto& p : powers) terms.push_back(&p);
  return weighted_sum(coeffs, terms);
}

}  // namespace zen
