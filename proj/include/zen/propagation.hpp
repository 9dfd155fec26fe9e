#pragma once

#include "zen/hypergraph.hpp"
#include "zen/sparse.hpp"

#include <array>
#include <string>
#include <vector>

namespace zen {

enum class NormalizationKind { Symmetric, Row };

std::string to_string(NormalizationKind kind);
NormalizationKind parse_normalization(const std::string& name);  // "sym" | "row"

// Hop coefficients (alpha_0, alpha_1, alpha_2) on the probability simplex.
struct PropagationConfig {
  std::array<double, 3> alphas{1.0, 0.0, 0.0};
  NormalizationKind normalization = NormalizationKind::Symmetric;
  bool rap_enabled = true;
  static constexpr int hops = 2;

  // Throws ConfigError unless every alpha >= 0 and they sum to 1 within 1e-9.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Redundancy-aware propagation.
//
// Wherever a reciprocal (d_e - 1)^-1 or (d_v - 1)^-1 has a base <= 0, the
// term is 0: singleton hyperedges add nothing to the 1-hop matrix and
// degree-1 nodes cannot relay a 2-hop walk. Isolated nodes get zero rows.
// ---------------------------------------------------------------------------

// Symmetric: Dv^-1/2 H (De - I)^-1 H^T Dv^-1/2.  Row: Dv^-1 H (De - I)^-1 H^T.
SparseMatrix build_A1_hat(const Hypergraph& hg, NormalizationKind kind);

// Closed-form diagonal of build_A1_hat (the same for both kinds):
//   d_v^-1 * sum_{e incident to v} (d_e - 1)^-1.
std::vector<double> rsi_diag_1(const Hypergraph& hg, NormalizationKind kind);

// Â1 with its diagonal removed.
SparseMatrix build_A1_star(const Hypergraph& hg, NormalizationKind kind);

// Middle factor of the 2-hop product. Symmetric: d_v / (d_v - 1).
// Row: d_v / (d_v - 1) as well, applied between row-normalized factors.
std::vector<double> two_hop_middle_factor(const Hypergraph& hg, NormalizationKind kind);

// Â2 = A1* M A1* with the diagonal retained.
SparseMatrix build_A2_hat(const Hypergraph& hg, NormalizationKind kind, const SparseMatrix& A1_star);

// Exact diagonal of Â2 from the hypergraph structure alone:
//   d_i^-1 * sum_{k != i} s_ik^2 (d_k - 1)^-1,  s_ik = sum_{e ∋ i,k} (d_e - 1)^-1.
// Identical for both kinds.
std::vector<double> rsi_diag_2(const Hypergraph& hg, NormalizationKind kind);

// Per-hyperedge closed form
//   d_i^-1 * sum_{e ∋ i} (d_e - 1)^-2 * sum_{k in e, k != i} (d_k - 1)^-1.
// Equal to rsi_diag_2 when no two nodes share more than one hyperedge;
// otherwise it omits the cross terms between shared hyperedges.
std::vector<double> rsi_diag_2_per_edge(const Hypergraph& hg);

// Â2 minus its diagonal. In debug builds, checks diag(Â2) against
// rsi_diag_2 to 1e-10 and throws ComputationError on mismatch.
SparseMatrix build_A2_star(const Hypergraph& hg, NormalizationKind kind, const SparseMatrix& A1_star);

// The per-hop matrices for one hypergraph and normalization kind, built
// once and reused for every coefficient triple.
struct PropagationBasis {
  NormalizationKind kind = NormalizationKind::Symmetric;
  SparseMatrix identity;
  SparseMatrix A1_hat, A1_star;
  SparseMatrix A2_hat, A2_star;

  static PropagationBasis build(const Hypergraph& hg, NormalizationKind kind);

  // RAP on: {I, A1*, A2*}. RAP off: {I, Â1, Â2}.
  std::array<const SparseMatrix*, 3> hops(bool rap_enabled) const;
  SparseMatrix compose(const PropagationConfig& config) const;
};

// P* = a0 I + a1 A1* + a2 A2* (or the Â matrices when RAP is disabled).
SparseMatrix build_P_star(const Hypergraph& hg, const PropagationConfig& config);

// ---------------------------------------------------------------------------
// Linearized baseline adjacencies.
// ---------------------------------------------------------------------------

struct BaselineRecipe {
  enum class Kind { HGNN, HNHN, UniGCNII, AllDeepSet, EDHNN };
  Kind kind = Kind::HGNN;
  // HNHN: exponents on edge sizes (alpha) and node degrees (beta).
  // UniGCNII / ED-HNN: restart coefficient alpha in [0, 1].
  double alpha = 0.0;
  double beta = 0.0;

  static BaselineRecipe hgnn() { return {Kind::HGNN}; }
  static BaselineRecipe hnhn(double alpha, double beta) { return {Kind::HNHN, alpha, beta}; }
  static BaselineRecipe unigcnii(double alpha) { return {Kind::UniGCNII, alpha}; }
  static BaselineRecipe alldeepset() { return {Kind::AllDeepSet}; }
  static BaselineRecipe edhnn(double alpha) { return {Kind::EDHNN, alpha}; }

  void validate() const;
};

std::string to_string(BaselineRecipe::Kind kind);

// One-hop base matrix of the recipe:
//   HGNN        Dv^-1/2 H De^-1 H^T Dv^-1/2
//   HNHN        Dv,a^-1 H De^a De,b^-1 H^T Dv^b
//   UniGCNII    Dv^-1 H D~e^-1 H^T,   (D~e)_jj = mean member degree
//   AllDeepSet  Dv^-1 H De^-1 H^T
//   ED-HNN      Dv^-1 H De^-1 H^T
// Zero denominators contribute 0.
SparseMatrix baseline_base_matrix(const Hypergraph& hg, const BaselineRecipe& recipe);

// l-th power of the base matrix; l = 0 gives the identity.
SparseMatrix build_baseline_adjacency(const Hypergraph& hg, const BaselineRecipe& recipe, int l);

// (a, a(1-a), ..., a(1-a)^(L-1), (1-a)^L).
std::vector<double> restart_coefficients(double alpha, int L);

// Full propagation matrix of a baseline at depth L: restart mixture for
// UniGCNII / ED-HNN, plain A_L otherwise.
SparseMatrix build_baseline_propagation(const Hypergraph& hg, const BaselineRecipe& recipe, int L);

}  // namespace zen
