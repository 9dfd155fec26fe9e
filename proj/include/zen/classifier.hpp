#pragma once

#include "zen/io.hpp"
#include "zen/sparse.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace zen {

// Train / validation / test masks over the nodes.
struct Split {
  std::vector<std::uint8_t> train_mask, val_mask, test_mask;
  int shots = 0;
  std::int32_t num_classes = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(train_mask.size()); }
  std::vector<std::int64_t> train_nodes() const;
  std::vector<std::int64_t> val_nodes() const;
  std::vector<std::int64_t> test_nodes() const;

  // Masks equally sized and disjoint; exactly `shots` training nodes per
  // class. Throws ConfigError otherwise.
  void validate(const LabelSet& labels) const;
};

// Z = g_row(P X): unit-norm rows, zero rows stay zero.
struct EmbeddingMatrix {
  Eigen::MatrixXd values;
};

// d x c weights; column k is the embedding of class k.
struct WeightMatrix {
  Eigen::MatrixXd values;
};

struct Prediction {
  Eigen::MatrixXd scores;
  std::vector<std::int32_t> hard_labels;
};

struct TrainingParams {
  double learning_rate = 0.05;
  int epochs = 200;

  void validate() const;
};

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& m);
Eigen::MatrixXd normalize_cols(const Eigen::MatrixXd& m);

EmbeddingMatrix embed(const SparseMatrix& P, const Eigen::MatrixXd& X);

// Closed-form weights g_col(Z^T D_trn Y): column c is the normalized sum of
// the class-c training embeddings. Throws ConfigError if a class has no
// training node.
WeightMatrix tcs_weights(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels);

// Exact minimizer of the masked SSE, (Z^T D Z)^+ Z^T D Y, through an SVD of
// the d x d Gram matrix with singular-value cutoff 1e-10 * sigma_max.
// O(d^3); throws GuardError when d exceeds `max_dim`.
WeightMatrix exact_weights(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                           Eigen::Index max_dim = 8192);

// Masked SSE ||D(ZW - Y)||_F^2 and its gradient -2 (DZ)^T (DY - DZW).
double sse_loss(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                const Eigen::MatrixXd& W);
Eigen::MatrixXd sse_gradient(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                             const Eigen::MatrixXd& W);

// Full-batch gradient descent on the masked SSE from W = 0 with a fixed
// learning rate. Throws ComputationError if the loss exceeds 1e10.
WeightMatrix train_weights_gd(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                              const TrainingParams& params);

// scores = Z W; hard label = lowest index attaining the row maximum.
// Zero embedding rows score 0 everywhere and fall to class 0 (warned about
// unless `warn_zero_rows` is false).
Prediction predict(const EmbeddingMatrix& Z, const WeightMatrix& W, bool warn_zero_rows = true);

// Eigen-structure of the training Gram matrix under the unit-norm,
// epsilon-similarity model:
//   M1 = I - (1/k)(I_c ⊗ J_k),  M2 = (1/k)(I_c ⊗ J_k) - (1/kc) J,  M3 = (1/kc) J
//   l1 = eps, l2 = (1 - 2 eps) k + eps, l3 = k (1 - 2 eps + eps c) + eps
struct SpectralComponents {
  double epsilon = 0.0;
  int k = 0;
  int c = 0;
  std::array<double, 3> lambdas{};

  static SpectralComponents make(double epsilon, int k, int c);
  // Dense kc x kc projector M_{index+1}; refuses kc above dense_guard().
  Eigen::MatrixXd projector(int index) const;
  // (1 - 2 eps)(I_c ⊗ J_k) + eps (I + J).
  Eigen::MatrixXd gram_target() const;
};

// Relative Frobenius error, in percent, of replacing the inverse-squared
// Gram spectrum by (1/eps) times the inverse spectrum.
double tcs_error_bound(double epsilon, int k, int c);

}  // namespace zen
