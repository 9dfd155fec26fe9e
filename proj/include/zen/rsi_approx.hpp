#pragma once

#include "zen/hypergraph.hpp"
#include "zen/propagation.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>

namespace zen {

struct WalkParams {
  int walk_length = 1;
  std::int64_t trials = 100000;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct HutchinsonParams {
  std::int64_t num_probes = 100;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// Monte-Carlo return probability of a walker that, `walk_length` times,
// picks an incident hyperedge uniformly and then a member of it uniformly
// (the current node included). Trial t draws from stream t of the seed, so
// the estimate is reproducible and independent of the thread count.
// The exact value is diag((Dv^-1 H De^-1 H^T)^l)[node].
double random_walk_return_prob(const Hypergraph& hg, NodeId node, const WalkParams& params,
                               int threads = 1);

using Matvec = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Hutchinson diagonal estimate (1/m) sum_k z_k ⊙ (A z_k) with Rademacher
// probes, using only matvec calls. Entry i of probe k comes from draw
// k * n + i of the seed's stream.
Eigen::VectorXd hutchinson_diag(const Matvec& matvec, std::int64_t n, const HutchinsonParams& params);

// Matrix whose diagonal an oracle call computes.
enum class DiagTarget {
  RapHat,    // Â_l of the redundancy-aware recipe (l <= 2)
  WalkMatrix // (Dv^-1 H De^-1 H^T)^l, the random-walk target
};

std::string to_string(DiagTarget target);

// Largest node count the dense oracle will materialize. Defaults to 2000;
// the ZEN_DENSE_GUARD environment variable overrides it.
std::int64_t dense_guard();

// Diagonal of the l-hop matrix computed with dense linear algebra built
// from an explicit dense incidence matrix. Test oracle for the closed forms
// and both estimators. Throws GuardError above dense_guard().
Eigen::VectorXd dense_diag_oracle(const Hypergraph& hg, NormalizationKind kind, int l,
                                  DiagTarget target = DiagTarget::RapHat);

// Dense l-hop matrix behind dense_diag_oracle.
Eigen::MatrixXd dense_hop_matrix(const Hypergraph& hg, NormalizationKind kind, int l,
                                 DiagTarget target = DiagTarget::RapHat);

}  // namespace zen
